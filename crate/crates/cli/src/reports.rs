use serde::Serialize;

use borcherds_core::lattice::EvenLattice;
use borcherds_core::lift::{
    singular_weight, theorem1_criterion, CongruenceReport, PrincipalPartReport, WeylData,
};
use borcherds_core::rational::{format, format_vec};

fn strings(values: &[borcherds_core::Rational]) -> Vec<String> {
    values.iter().map(format).collect()
}

#[derive(Debug, Serialize)]
pub struct ClassEntry {
    pub gamma: Vec<String>,
    pub q: String,
}

#[derive(Debug, Serialize)]
pub struct LatticeInfo {
    pub gram: Vec<Vec<i64>>,
    pub rank: usize,
    pub det: String,
    pub gcd: i64,
    pub elementary_divisors: Vec<u64>,
    pub order: usize,
    pub criterion: bool,
    pub singular_weight: String,
    pub classes: Vec<ClassEntry>,
}

impl LatticeInfo {
    pub fn new(lattice: &EvenLattice) -> Self {
        let group = lattice.discriminant_group();
        let classes = group
            .representatives()
            .iter()
            .map(|g| ClassEntry {
                gamma: strings(g.coords()),
                q: format(&lattice.q_mod1(g.coords()).expect("representative in K'")),
            })
            .collect();
        LatticeInfo {
            gram: lattice.gram().to_vec(),
            rank: lattice.rank(),
            det: lattice.det().to_string(),
            gcd: lattice.gcd_inner_products(),
            elementary_divisors: group.elementary_divisors().to_vec(),
            order: group.order(),
            criterion: theorem1_criterion(lattice),
            singular_weight: format(&singular_weight(lattice)),
            classes,
        }
    }

    pub fn text(&self) -> String {
        let divisors: Vec<String> = self
            .elementary_divisors
            .iter()
            .map(u64::to_string)
            .collect();
        let mut out = format!(
            "rank: {}\ndet: {}\ngcd of inner products: {}\ndiscriminant group: ({}), order {}\n8 | gcd: {}\nsingular weight: {}\n",
            self.rank,
            self.det,
            self.gcd,
            divisors.join(", "),
            self.order,
            self.criterion,
            self.singular_weight
        );
        for class in &self.classes {
            out.push_str(&format!(
                "  ({})  Q = {} mod 1\n",
                class.gamma.join(", "),
                class.q
            ));
        }
        out
    }
}

#[derive(Debug, Serialize)]
pub struct Congruence {
    pub gcd: i64,
    pub sum: String,
    pub residue: u32,
    pub passes: bool,
}

impl Congruence {
    pub fn new(report: &CongruenceReport) -> Self {
        Congruence {
            gcd: report.gcd,
            sum: report.sum.to_string(),
            residue: report.residue,
            passes: report.passes,
        }
    }

    pub fn text(&self) -> String {
        format!(
            "N={}, sum={}, residue {}\ncongruence: {}\n",
            self.gcd,
            self.sum,
            self.residue,
            if self.passes { "pass" } else { "fail" }
        )
    }
}

#[derive(Debug, Serialize)]
pub struct Criterion {
    pub gcd: i64,
    pub criterion: bool,
}

impl Criterion {
    pub fn text(&self) -> String {
        format!(
            "gcd of inner products: {}\n8 | gcd: {}\n",
            self.gcd, self.criterion
        )
    }
}

#[derive(Debug, Serialize)]
pub struct Weyl {
    #[serde(rename = "A")]
    pub a: String,
    #[serde(rename = "B")]
    pub b: Vec<String>,
    #[serde(rename = "C")]
    pub c: String,
    pub b_pairing: Vec<String>,
    pub w0: Vec<String>,
}

impl Weyl {
    pub fn new(data: &WeylData, lattice: &EvenLattice) -> Self {
        Weyl {
            a: format(&data.a),
            b: strings(&data.b),
            c: format(&data.c),
            b_pairing: strings(&data.b_pairing(lattice)),
            w0: strings(&data.chamber_vector),
        }
    }

    pub fn text(data: &WeylData, lattice: &EvenLattice) -> String {
        format!(
            "A = {}\nB = {}\nC = {}\nG·B = {}\nw0 = {}\n",
            format(&data.a),
            format_vec(&data.b),
            format(&data.c),
            format_vec(&data.b_pairing(lattice)),
            format_vec(&data.chamber_vector)
        )
    }
}

#[derive(Debug, Serialize)]
pub struct CheckEntry {
    pub name: &'static str,
    pub passed: bool,
    pub offenders: Vec<String>,
}

#[derive(Debug, Serialize)]
pub struct Validation {
    pub passed: bool,
    pub checks: Vec<CheckEntry>,
    pub weight: String,
    pub half_integral: bool,
    pub singular_weight: String,
    pub singular: bool,
}

impl Validation {
    pub fn new(report: &PrincipalPartReport) -> Self {
        Validation {
            passed: report.passed(),
            checks: report
                .checks
                .iter()
                .map(|c| CheckEntry {
                    name: c.name,
                    passed: c.passed,
                    offenders: c.offenders.clone(),
                })
                .collect(),
            weight: format(&report.weight.weight),
            half_integral: report.weight.half_integral,
            singular_weight: format(&report.singular_weight),
            singular: report.singular,
        }
    }

    pub fn text(&self) -> String {
        let mut out = String::new();
        for check in &self.checks {
            if check.passed {
                out.push_str(&format!("PASS {}\n", check.name));
            } else {
                out.push_str(&format!(
                    "FAIL {}: {}\n",
                    check.name,
                    check.offenders.join("; ")
                ));
            }
        }
        out.push_str(&format!(
            "weight: {}{}\nsingular weight: {} ({})\n{}\n",
            self.weight,
            if self.half_integral {
                " (half-integral)"
            } else {
                ""
            },
            self.singular_weight,
            if self.singular {
                "singular"
            } else {
                "not singular"
            },
            if self.passed {
                "all checks pass"
            } else {
                "validation failed"
            }
        ));
        out
    }
}
