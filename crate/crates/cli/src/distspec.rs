//! Continuum distribution specs on the command line.
//!
//! * `uniform:LO,HI`
//! * `normal:MEAN,STD`
//! * `pwl:Z0:F0,Z1:F1,...` with `F` running from 0 to 1

use cac_core::continuum::ContinuumDistribution;

use crate::error::CliError;

pub fn parse(spec: &str) -> Result<ContinuumDistribution, CliError> {
    let (family, args) = spec.split_once(':').unwrap_or((spec, ""));
    let bad = |msg: String| CliError::Input(format!("distribution `{spec}`: {msg}"));
    let numbers = |text: &str| -> Result<Vec<f64>, CliError> {
        text.split(',')
            .map(|t| t.trim().parse::<f64>().map_err(|_| bad(format!("`{t}` is not a number"))))
            .collect()
    };
    let dist = match family {
        "uniform" | "normal" => {
            let v = numbers(args)?;
            if v.len() != 2 {
                return Err(bad(format!("{family} takes exactly 2 parameters")));
            }
            if family == "uniform" {
                ContinuumDistribution::uniform(v[0], v[1])
            } else {
                ContinuumDistribution::gaussian(v[0], v[1])
            }
        }
        "pwl" => {
            let knots = args
                .split(',')
                .map(|pair| {
                    let (z, f) = pair
                        .split_once(':')
                        .ok_or_else(|| bad(format!("knot `{pair}` is not Z:F")))?;
                    let z = numbers(z)?[0];
                    let f = numbers(f)?[0];
                    Ok((z, f))
                })
                .collect::<Result<Vec<_>, CliError>>()?;
            ContinuumDistribution::piecewise_linear(knots)
        }
        "step" | "empirical" | "instance" => {
            return Err(bad(
                "step-function distributions are discontinuous; solve the finite instance with `cac solve` instead"
                    .to_string(),
            ))
        }
        other => return Err(bad(format!("unknown family `{other}`, expected uniform, normal or pwl"))),
    };
    dist.map_err(|e| bad(e.to_string()))
}
