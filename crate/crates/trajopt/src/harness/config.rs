use serde::{Deserialize, Serialize};
use std::str::FromStr;

use crate::ddp::DdpOptions;
use crate::models::{make_benchmark, ProblemId};
use crate::nlp::NlpOptions;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Ddp,
    Gpm,
}

#[derive(Debug, thiserror::Error)]
#[error("unknown method {0:?}; expected ddp or gpm")]
pub struct UnknownMethod(pub String);

impl FromStr for Method {
    type Err = UnknownMethod;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "ddp" => Ok(Self::Ddp),
            "gpm" => Ok(Self::Gpm),
            other => Err(UnknownMethod(other.to_string())),
        }
    }
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Self::Ddp => "ddp",
            Self::Gpm => "gpm",
        })
    }
}

/// Diagonal cost weights; dimensions must match the problem's state and
/// control sizes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeightConfig {
    /// Running state weight diagonal Q.
    pub q: Vec<f64>,
    /// Control weight diagonal R.
    pub r: Vec<f64>,
    /// Terminal weight diagonal W_f (used by DDP; GPM pins the endpoint).
    pub wf: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DdpSettings {
    pub max_iters: usize,
    pub tol: f64,
    pub mu_init: f64,
    pub mu_max: f64,
    pub alpha_halvings: u32,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NlpSettings {
    pub max_outer: usize,
    pub max_inner: usize,
    pub constraint_tol: f64,
    pub stationarity_tol: f64,
    pub penalty_init: f64,
    pub penalty_growth: f64,
    pub penalty_max: f64,
}

/// One benchmark run, fully specified: every field is serialized so the
/// config file is a complete, reproducible record. Unknown keys are
/// rejected on parse.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub problem: ProblemId,
    pub method: Method,
    /// Discrete step for DDP; N = horizon / dt.
    pub dt: f64,
    /// Collocation point count K for GPM.
    pub collocation_points: usize,
    pub weights: WeightConfig,
    pub ddp: DdpSettings,
    pub nlp: NlpSettings,
    /// Output directory for trajectory/report files.
    pub out_dir: Option<String>,
}

impl RunConfig {
    /// Per-problem defaults for the given method.
    pub fn defaults(problem: ProblemId, method: Method) -> Self {
        let bench = make_benchmark(problem);
        let n = bench.plant.state_dim();
        let m = bench.plant.control_dim();
        let weights = WeightConfig {
            q: (0..n).map(|i| bench.cost.state_weight[(i, i)]).collect(),
            r: (0..m).map(|i| bench.cost.control_weight[(i, i)]).collect(),
            wf: (0..n).map(|i| bench.cost.terminal_weight[(i, i)]).collect(),
        };
        let ddp_defaults = DdpOptions::default();
        let nlp_defaults = NlpOptions::default();
        Self {
            problem,
            method,
            dt: bench.default_dt,
            collocation_points: bench.default_collocation,
            weights,
            ddp: DdpSettings {
                max_iters: default_ddp_iters(problem),
                tol: ddp_defaults.tol,
                mu_init: ddp_defaults.mu_init,
                mu_max: ddp_defaults.mu_max,
                alpha_halvings: ddp_defaults.alpha_halvings,
            },
            nlp: NlpSettings {
                max_outer: default_nlp_outer(problem),
                max_inner: default_nlp_inner(problem),
                constraint_tol: nlp_defaults.constraint_tol,
                stationarity_tol: nlp_defaults.stationarity_tol,
                penalty_init: nlp_defaults.penalty_init,
                penalty_growth: nlp_defaults.penalty_growth,
                penalty_max: nlp_defaults.penalty_max,
            },
            out_dir: None,
        }
    }

    pub fn ddp_options(&self, num_steps: usize) -> DdpOptions {
        DdpOptions {
            num_steps,
            max_iters: self.ddp.max_iters,
            tol: self.ddp.tol,
            mu_init: self.ddp.mu_init,
            mu_max: self.ddp.mu_max,
            alpha_halvings: self.ddp.alpha_halvings,
            warm_start: None,
        }
    }

    pub fn nlp_options(&self, log: bool) -> NlpOptions {
        NlpOptions {
            max_outer: self.nlp.max_outer,
            max_inner: self.nlp.max_inner,
            constraint_tol: self.nlp.constraint_tol,
            stationarity_tol: self.nlp.stationarity_tol,
            penalty_init: self.nlp.penalty_init,
            penalty_growth: self.nlp.penalty_growth,
            penalty_max: self.nlp.penalty_max,
            log,
        }
    }
}

/// The double cart pole needs many more sweeps than the other plants.
fn default_ddp_iters(problem: ProblemId) -> usize {
    match problem {
        ProblemId::DoubleCartpole => 1500,
        _ => 500,
    }
}

/// Outer-iteration budgets sized to where each transcription's
/// feasibility bottoms out; more rounds past that point only burn time.
fn default_nlp_outer(problem: ProblemId) -> usize {
    match problem {
        ProblemId::Cartpole => 30,
        ProblemId::DoubleCartpole => 13,
        ProblemId::Quadrotor => 9,
    }
}

/// The swing-up transcriptions are strongly nonconvex; the inner
/// quasi-Newton iteration needs a large budget per outer round.
fn default_nlp_inner(problem: ProblemId) -> usize {
    match problem {
        ProblemId::Cartpole => 20_000,
        ProblemId::DoubleCartpole => 20_000,
        ProblemId::Quadrotor => 20_000,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_is_lossless() {
        for problem in [ProblemId::Cartpole, ProblemId::DoubleCartpole, ProblemId::Quadrotor] {
            for method in [Method::Ddp, Method::Gpm] {
                let config = RunConfig::defaults(problem, method);
                let text = serde_json::to_string_pretty(&config).unwrap();
                let parsed: RunConfig = serde_json::from_str(&text).unwrap();
                assert_eq!(parsed, config);
                assert_eq!(serde_json::to_string_pretty(&parsed).unwrap(), text);
            }
        }
    }

    #[test]
    fn unknown_keys_are_rejected() {
        let mut value: serde_json::Value =
            serde_json::to_value(RunConfig::defaults(ProblemId::Cartpole, Method::Ddp)).unwrap();
        value["surprise"] = serde_json::json!(1);
        assert!(serde_json::from_value::<RunConfig>(value).is_err());
    }

    #[test]
    fn weight_dimensions_match_problems() {
        let c = RunConfig::defaults(ProblemId::Quadrotor, Method::Gpm);
        assert_eq!(c.weights.q.len(), 12);
        assert_eq!(c.weights.r.len(), 4);
        assert_eq!(c.weights.wf.len(), 12);
    }
}
