use question_space::SpaceError;
use serde::{Deserialize, Serialize};
use theory_engine::TheoryError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ProtocolError {
    #[error("bad protocol config: {0}")]
    BadConfig(String),
    #[error("classes `{0}` and `{1}` are implied in the quotient lattice")]
    ImpliedClasses(String, String),
    #[error(transparent)]
    Space(#[from] SpaceError),
    #[error(transparent)]
    Theory(#[from] TheoryError),
}

/// What the eavesdropper does on intercepted rounds. Every interception is
/// a single inquiry followed by forwarding the system.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EveStrategy {
    None,
    /// Inquire a uniformly random class from the configured list.
    InterceptResendUniform,
    /// Always inquire the given class.
    InterceptResendFixed(String),
    /// Always inquire the same class as Alice. Models an eavesdropper who
    /// can guess equivalent questions; detection fails in this case.
    InterceptResendMatching,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ProtocolConfig {
    pub rounds: u64,
    pub question_classes: Vec<String>,
    pub eve_strategy: EveStrategy,
    pub eve_rate: f64,
    pub sample_fraction: f64,
    pub abort_threshold: f64,
    pub seed: u64,
}

impl Default for ProtocolConfig {
    fn default() -> Self {
        ProtocolConfig {
            rounds: 10_000,
            question_classes: vec!["Z".to_string(), "X".to_string()],
            eve_strategy: EveStrategy::None,
            eve_rate: 0.0,
            sample_fraction: 0.5,
            abort_threshold: 0.10,
            seed: 0,
        }
    }
}

impl ProtocolConfig {
    pub fn validate(&self) -> Result<(), ProtocolError> {
        if self.rounds == 0 {
            return Err(ProtocolError::BadConfig("rounds must be positive".into()));
        }
        if self.question_classes.len() < 2 {
            return Err(ProtocolError::BadConfig(
                "need at least two question classes".into(),
            ));
        }
        let mut unique = self.question_classes.clone();
        unique.sort();
        unique.dedup();
        if unique.len() != self.question_classes.len() {
            return Err(ProtocolError::BadConfig("classes must be distinct".into()));
        }
        if !(0.0..=1.0).contains(&self.eve_rate) {
            return Err(ProtocolError::BadConfig("eve_rate outside [0, 1]".into()));
        }
        if !(self.sample_fraction > 0.0 && self.sample_fraction < 1.0) {
            return Err(ProtocolError::BadConfig(
                "sample_fraction outside (0, 1)".into(),
            ));
        }
        if let EveStrategy::InterceptResendFixed(class) = &self.eve_strategy {
            if !self.question_classes.contains(class) {
                return Err(ProtocolError::BadConfig(format!(
                    "fixed eve class `{class}` not in the class list"
                )));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RoundRecord {
    pub round: u64,
    pub alice_class: String,
    pub alice_answer: String,
    pub eve_intercepted: bool,
    pub eve_class: Option<String>,
    pub eve_answer: Option<String>,
    pub bob_class: String,
    pub bob_answer: String,
    pub sifted: bool,
    /// Defined only on sifted rounds.
    pub error: Option<bool>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ProtocolStats {
    pub rounds: u64,
    pub sifted_count: u64,
    pub sampled_count: u64,
    pub sampled_errors: u64,
    pub qber: f64,
    pub detected: bool,
    /// Sifted rounds on which Eve inquired Alice's class and thus holds the
    /// key bit.
    pub eve_information_rounds: u64,
}
