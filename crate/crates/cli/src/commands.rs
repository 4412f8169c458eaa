use std::fmt;
use std::io::Read;
use std::path::Path;

use borcherds_core::format::{
    emit_expansion, emit_principal_part, emit_series, emit_vector_form, parse_lattice,
    parse_principal_part, parse_series, parse_vector_form, to_canonical_json,
};
use borcherds_core::lift::{
    congruence_check, default_chamber, lift_expansion, lift_weight, principal_part,
    singular_weight, theorem1_criterion, validate_principal_part, weyl_vector,
};
use borcherds_core::rational::{self, format, format_vec};
use borcherds_core::series::{phi_n_with_budget, theta_decompose};
use borcherds_core::{Error, Rational};

use crate::reports::{Congruence, Criterion, LatticeInfo, Validation, Weyl};
use crate::{Chamber, Command, Common};

#[derive(Debug)]
pub enum CliError {
    Domain(Error),
    Io(String),
    Usage(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Domain(e) if !e.is_schema() => 1,
            _ => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Domain(Error::SchemaViolation { path, message }) => {
                write!(f, "SchemaViolation: at `{path}`: {message}")
            }
            CliError::Domain(e) => write!(f, "{}: {e}", e.name()),
            CliError::Io(msg) => write!(f, "IoError: {msg}"),
            CliError::Usage(msg) => write!(f, "UsageError: {msg}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Domain(e)
    }
}

/// Canonical JSON, a human-readable summary and the exit status.
pub struct Outcome {
    pub json: String,
    pub text: String,
    pub status: u8,
}

impl Outcome {
    fn ok(json: String, text: String) -> Self {
        Outcome {
            json,
            text,
            status: 0,
        }
    }
}

fn read_input(path: Option<&Path>) -> Result<String, CliError> {
    match path {
        Some(p) => {
            std::fs::read_to_string(p).map_err(|e| CliError::Io(format!("{}: {e}", p.display())))
        }
        None => {
            let mut text = String::new();
            std::io::stdin()
                .read_to_string(&mut text)
                .map_err(|e| CliError::Io(format!("stdin: {e}")))?;
            Ok(text)
        }
    }
}

fn parse_prec(text: &str) -> Result<Rational, CliError> {
    let prec = rational::parse(text)
        .map_err(|_| CliError::Usage(format!("--prec: `{text}` is not a rational p/q")))?;
    if prec <= rational::int(0) {
        return Err(CliError::Usage(format!(
            "--prec: must be positive, got {text}"
        )));
    }
    Ok(prec)
}

fn chamber_vector(chamber: &Chamber, rank: usize) -> Result<Vec<Rational>, CliError> {
    let w0 = match &chamber.w0 {
        None => default_chamber(rank),
        Some(text) => text
            .split(',')
            .map(|part| {
                rational::parse(part.trim()).map_err(|_| {
                    CliError::Usage(format!("--w0: `{}` is not a rational p/q", part.trim()))
                })
            })
            .collect::<Result<_, _>>()?,
    };
    Ok(if chamber.flip_chamber {
        w0.iter().map(|x| -x).collect()
    } else {
        w0
    })
}

pub fn run(command: &Command, common: &Common) -> Result<Outcome, CliError> {
    let budget = usize::try_from(common.budget).unwrap_or(usize::MAX);
    match command {
        Command::LatticeInfo { input } => {
            let lattice = parse_lattice(&read_input(input.as_deref())?)?;
            let info = LatticeInfo::new(&lattice);
            Ok(Outcome::ok(to_canonical_json(&info), info.text()))
        }
        Command::Phi { n, prec } => {
            let prec = parse_prec(prec)?;
            let phi = phi_n_with_budget(*n as usize, &prec, budget)?;
            let text = format!(
                "phi_{n}: lattice 8Z^{n}, weight 0, prec {}, {} terms\n",
                format(phi.prec()),
                phi.len()
            );
            Ok(Outcome::ok(emit_series(&phi), text))
        }
        Command::Decompose { input } => {
            let phi = parse_series(&read_input(input.as_deref())?)?;
            let form = theta_decompose(&phi)?;
            let text = format!(
                "{} components, weight {}\n",
                form.components.len(),
                format(&form.weight)
            );
            Ok(Outcome::ok(emit_vector_form(&form), text))
        }
        Command::PrincipalPart { input } => {
            let text = read_input(input.as_deref())?;
            let is_vector_form = serde_json::from_str::<serde_json::Value>(&text)
                .ok()
                .and_then(|v| v.as_object().map(|o| o.contains_key("components")))
                .unwrap_or(false);
            let form = if is_vector_form {
                parse_vector_form(&text)?
            } else {
                theta_decompose(&parse_series(&text)?)?
            };
            let pp = principal_part(&form);
            let weight = lift_weight(&pp);
            let summary = format!(
                "constant term {}, lift weight {}{}, singular weight {}, {} principal terms\n",
                pp.constant_term,
                format(&weight.weight),
                if weight.half_integral {
                    " (half-integral)"
                } else {
                    ""
                },
                format(&singular_weight(&pp.lattice)),
                pp.terms.len()
            );
            Ok(Outcome::ok(emit_principal_part(&pp), summary))
        }
        Command::Congruence { input } => {
            let phi = parse_series(&read_input(input.as_deref())?)?;
            let report = Congruence::new(&congruence_check(&phi)?);
            Ok(Outcome::ok(to_canonical_json(&report), report.text()))
        }
        Command::Criterion { input } => {
            let lattice = parse_lattice(&read_input(input.as_deref())?)?;
            let report = Criterion {
                gcd: lattice.gcd_inner_products(),
                criterion: theorem1_criterion(&lattice),
            };
            Ok(Outcome::ok(to_canonical_json(&report), report.text()))
        }
        Command::Weyl { input, chamber } => {
            let phi = parse_series(&read_input(input.as_deref())?)?;
            let w0 = chamber_vector(chamber, phi.lattice().rank())?;
            let data = weyl_vector(&phi, &w0)?;
            let report = Weyl::new(&data, phi.lattice());
            Ok(Outcome::ok(
                to_canonical_json(&report),
                Weyl::text(&data, phi.lattice()),
            ))
        }
        Command::Lift {
            input,
            prec,
            chamber,
        } => {
            let total = parse_prec(prec)?;
            let phi = parse_series(&read_input(input.as_deref())?)?;
            let w0 = chamber_vector(chamber, phi.lattice().rank())?;
            let expansion = lift_expansion(&phi, &total, &w0)?;
            if expansion.coeffs.len() > budget {
                return Err(Error::ResourceLimit {
                    op: "lift_expansion",
                    budget,
                    needed: expansion.coeffs.len(),
                }
                .into());
            }
            let text = format!(
                "weight {}, A = {}, B = {}, C = {}, {} monomials with n + m < {}; holomorphy not decided\n",
                format(&expansion.weight),
                format(&expansion.weyl.a),
                format_vec(&expansion.weyl.b),
                format(&expansion.weyl.c),
                expansion.coeffs.len(),
                format(&expansion.total_prec)
            );
            Ok(Outcome::ok(emit_expansion(&expansion), text))
        }
        Command::ValidatePp { input } => {
            let pp = parse_principal_part(&read_input(input.as_deref())?)?;
            let report = Validation::new(&validate_principal_part(&pp));
            Ok(Outcome {
                json: to_canonical_json(&report),
                text: report.text(),
                status: if report.passed { 0 } else { 1 },
            })
        }
    }
}
