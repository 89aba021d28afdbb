use std::fmt::Display;
use std::fs;
use std::path::{Path, PathBuf};

use serde_json::{json, Value};

use lattice_core::{classify, generate_family, Family, LatticeFile};
use protocol_sim::{
    bb84_qubit_theory, bb84_space, flip_model_protocol, records_to_csv, run_protocol,
    EveStrategy, ProtocolConfig,
};
use question_space::{
    check_structure_preservation, check_sublattice_orthogonality, detect_class_joins,
    resolution_restriction, SpaceFile,
};
use theory_engine::{
    is_isolated, is_noncontextual, InquirySequence, TheoryFile, DECISION_TOLERANCE,
};
use wigner_sim::{
    build_collapse_scenario, build_quantum_scenario, incompatibility_report, run_branch, Branch,
    InputState,
};

use crate::manifest::ManifestBuilder;

/// Input-side failures: unreadable files, parse errors, bad flag values.
/// These map to exit code 2; check failures map to exit code 1.
#[derive(Debug)]
pub struct InputError(pub String);

impl Display for InputError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

pub struct Execution {
    pub report: Value,
    pub check_failed: bool,
    pub csv: Option<(PathBuf, String)>,
}

impl Execution {
    fn ok(report: Value) -> Execution {
        Execution { report, check_failed: false, csv: None }
    }

    fn failed(report: Value) -> Execution {
        Execution { report, check_failed: true, csv: None }
    }
}

fn read_input(path: &Path, manifest: &mut ManifestBuilder) -> Result<String, InputError> {
    let bytes = fs::read(path)
        .map_err(|e| InputError(format!("cannot read {}: {e}", path.display())))?;
    manifest.add_input(&path.display().to_string(), &bytes);
    String::from_utf8(bytes)
        .map_err(|_| InputError(format!("{} is not valid UTF-8", path.display())))
}

fn parse_json<T: serde::de::DeserializeOwned>(text: &str, what: &str) -> Result<T, InputError> {
    serde_json::from_str(text).map_err(|e| InputError(format!("cannot parse {what}: {e}")))
}

pub fn lattice_check(
    path: &Path,
    manifest: &mut ManifestBuilder,
) -> Result<Execution, InputError> {
    let text = read_input(path, manifest)?;
    let file: LatticeFile = parse_json(&text, "lattice file")?;
    let (lattice, ortho) = match file.build() {
        Ok(built) => built,
        Err(e) => {
            return Ok(Execution::failed(json!({
                "passed": false,
                "failure": e.to_string(),
            })))
        }
    };
    let report = classify(&lattice, ortho.as_ref()).map_err(|e| InputError(e.to_string()))?;
    Ok(Execution::ok(json!({
        "passed": true,
        "classification": report,
    })))
}

fn parse_family(name: &str, n: u32) -> Result<Family, InputError> {
    match name {
        "boolean" => Ok(Family::Boolean(n)),
        "chain" => Ok(Family::Chain(n)),
        "mo" => Ok(Family::Mo(n)),
        "benzene" | "o6" => Ok(Family::Benzene),
        "m3" => Ok(Family::DiamondM3),
        "n5" => Ok(Family::PentagonN5),
        other => Err(InputError(format!(
            "unknown family `{other}`; use boolean, chain, mo, benzene, m3, or n5"
        ))),
    }
}

pub fn lattice_gen(family: &str, n: u32) -> Result<Execution, InputError> {
    let family = parse_family(family, n)?;
    let (spec, ortho) = generate_family(family).map_err(|e| InputError(e.to_string()))?;
    let file = LatticeFile::from_spec(&spec, ortho.as_ref());
    Ok(Execution::ok(serde_json::to_value(file).expect("lattice file serializes")))
}

pub fn space_check(path: &Path, manifest: &mut ManifestBuilder) -> Result<Execution, InputError> {
    let text = read_input(path, manifest)?;
    let file: SpaceFile = parse_json(&text, "space file")?;
    let space = match file.build() {
        Ok(space) => space,
        Err(e) => {
            return Ok(Execution::failed(json!({
                "passed": false,
                "failure": e.to_string(),
            })))
        }
    };
    let orthogonality = check_sublattice_orthogonality(&space);
    let preservation = check_structure_preservation(&space);
    let joins = detect_class_joins(&space, &[]);
    let passed = orthogonality.passed() && preservation.passed() && joins.passed();
    let resolutions: Value = if preservation.passed() {
        let mut runs = serde_json::Map::new();
        let mut run_ids: Vec<String> = file
            .sublattices
            .keys()
            .filter_map(|k| k.split(':').next().map(str::to_string))
            .collect();
        run_ids.sort();
        run_ids.dedup();
        for run in run_ids {
            if let Ok(r) = resolution_restriction(&space, &run) {
                runs.insert(run, json!(r));
            }
        }
        Value::Object(runs)
    } else {
        Value::Null
    };
    let report = json!({
        "passed": passed,
        "orthogonality": orthogonality,
        "preservation": preservation,
        "joins": joins,
        "resolution_restriction": resolutions,
    });
    Ok(if passed { Execution::ok(report) } else { Execution::failed(report) })
}

#[derive(serde::Deserialize)]
struct DomainFile {
    sequences: Vec<Vec<String>>,
    #[serde(default)]
    tolerance: Option<f64>,
}

pub fn theory_check(
    theory_path: &Path,
    space_path: &Path,
    domain_path: &Path,
    manifest: &mut ManifestBuilder,
) -> Result<Execution, InputError> {
    let theory_text = read_input(theory_path, manifest)?;
    let space_text = read_input(space_path, manifest)?;
    let domain_text = read_input(domain_path, manifest)?;
    let theory_file: TheoryFile = parse_json(&theory_text, "theory file")?;
    let space_file: SpaceFile = parse_json(&space_text, "space file")?;
    let domain: DomainFile = parse_json(&domain_text, "domain file")?;
    if domain.sequences.is_empty() {
        return Err(InputError("domain file lists no sequences".into()));
    }

    let theory = match theory_file.build() {
        Ok(theory) => theory,
        Err(e) => {
            return Ok(Execution::failed(json!({
                "passed": false,
                "failure": e.to_string(),
            })))
        }
    };
    let space = space_file
        .build()
        .map_err(|e| InputError(format!("space file: {e}")))?;
    let quotient = question_space::lift_quotient(&space)
        .map_err(|e| InputError(format!("space does not lift to a quotient: {e}")))?;
    for seq in &domain.sequences {
        for class in seq {
            if quotient.index_of(class).is_none() {
                return Err(InputError(format!(
                    "domain class `{class}` is not a class of the space"
                )));
            }
        }
    }

    let tolerance = domain.tolerance.unwrap_or(DECISION_TOLERANCE);
    let sequences: Vec<InquirySequence> = domain
        .sequences
        .iter()
        .map(|s| InquirySequence::of(s.clone()))
        .collect();
    let contextuality = is_noncontextual(&theory, &sequences, tolerance)
        .map_err(|e| InputError(e.to_string()))?;
    let mut isolation = Vec::new();
    for seq in &sequences {
        let verdict = is_isolated(&theory, seq, tolerance).map_err(|e| InputError(e.to_string()))?;
        isolation.push(json!({
            "sequence": seq.classes,
            "verdict": verdict,
        }));
    }
    Ok(Execution::ok(json!({
        "passed": true,
        "tolerance": tolerance,
        "contextuality": contextuality,
        "isolation": isolation,
    })))
}

fn parse_eve(spec: &str) -> Result<EveStrategy, InputError> {
    if let Some(class) = spec.strip_prefix("intercept_resend_fixed:") {
        return Ok(EveStrategy::InterceptResendFixed(class.to_string()));
    }
    match spec {
        "none" => Ok(EveStrategy::None),
        "intercept_resend_uniform" => Ok(EveStrategy::InterceptResendUniform),
        "intercept_resend_matching" => Ok(EveStrategy::InterceptResendMatching),
        other => Err(InputError(format!(
            "unknown eavesdropper strategy `{other}`; use none, intercept_resend_uniform, \
             intercept_resend_matching, or intercept_resend_fixed:<class>"
        ))),
    }
}

#[allow(clippy::too_many_arguments)]
pub fn bb84_run(
    theory_path: Option<&Path>,
    space_path: Option<&Path>,
    model: &str,
    rounds: u64,
    eve: &str,
    eve_rate: f64,
    threshold: f64,
    sample_fraction: f64,
    classes: Option<&str>,
    seed: u64,
    csv_path: Option<&Path>,
    manifest: &mut ManifestBuilder,
) -> Result<Execution, InputError> {
    let mut config = ProtocolConfig {
        rounds,
        eve_strategy: parse_eve(eve)?,
        eve_rate,
        abort_threshold: threshold,
        sample_fraction,
        seed,
        ..ProtocolConfig::default()
    };
    if let Some(classes) = classes {
        config.question_classes = classes.split(',').map(|s| s.trim().to_string()).collect();
    }

    let (stats, records) = match model {
        "flip" => flip_model_protocol(&config).map_err(|e| InputError(e.to_string()))?,
        "quantum" => {
            let theory = match theory_path {
                Some(path) => {
                    let text = read_input(path, manifest)?;
                    let file: TheoryFile = parse_json(&text, "theory file")?;
                    file.build().map_err(|e| InputError(e.to_string()))?
                }
                None => bb84_qubit_theory(),
            };
            let space = match space_path {
                Some(path) => {
                    let text = read_input(path, manifest)?;
                    let file: SpaceFile = parse_json(&text, "space file")?;
                    file.build().map_err(|e| InputError(e.to_string()))?
                }
                None => bb84_space(1),
            };
            run_protocol(&theory, &space, &config).map_err(|e| InputError(e.to_string()))?
        }
        other => {
            return Err(InputError(format!(
                "unknown model `{other}`; use quantum or flip"
            )))
        }
    };

    let csv = csv_path.map(|p| (p.to_path_buf(), records_to_csv(&records)));
    Ok(Execution {
        report: json!({
            "config": config,
            "model": model,
            "stats": stats,
        }),
        check_failed: false,
        csv,
    })
}

pub fn wigner_run(branch: &str, input: &str, account: &str) -> Result<Execution, InputError> {
    let input_state = match input {
        "super" => InputState::Superposition,
        "eigen" => InputState::Eigenstate,
        other => Err(InputError(format!(
            "unknown input `{other}`; use super or eigen"
        )))?,
    };
    let scenario = match account {
        "unitary" => build_quantum_scenario(input_state),
        "collapse" => build_collapse_scenario(input_state),
        other => Err(InputError(format!(
            "unknown account `{other}`; use unitary or collapse"
        )))?,
    };
    let report = match branch {
        "both" => {
            let report = incompatibility_report(&scenario, 1e-9)
                .map_err(|e| InputError(e.to_string()))?;
            serde_json::to_value(report).expect("report serializes")
        }
        "friend_first" | "wigner_first" => {
            let which = if branch == "friend_first" {
                Branch::FriendFirst
            } else {
                Branch::WignerFirst
            };
            let report =
                run_branch(&scenario, which).map_err(|e| InputError(e.to_string()))?;
            serde_json::to_value(report).expect("report serializes")
        }
        other => {
            return Err(InputError(format!(
                "unknown branch `{other}`; use friend_first, wigner_first, or both"
            )))
        }
    };
    Ok(Execution::ok(report))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eve_strategy_parsing() {
        assert_eq!(parse_eve("none").unwrap(), EveStrategy::None);
        assert_eq!(
            parse_eve("intercept_resend_fixed:Z").unwrap(),
            EveStrategy::InterceptResendFixed("Z".to_string())
        );
        assert!(parse_eve("resend").is_err());
    }

    #[test]
    fn family_parsing() {
        assert_eq!(parse_family("boolean", 3).unwrap(), Family::Boolean(3));
        assert_eq!(parse_family("o6", 0).unwrap(), Family::Benzene);
        assert!(parse_family("hexagonal", 0).is_err());
    }
}
