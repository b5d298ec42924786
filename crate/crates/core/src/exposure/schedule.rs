use serde::{Deserialize, Serialize};

use super::ExposureError;
use crate::model::ModelParams;

/// Which multi-round construction a schedule drives.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Variant {
    /// `G_b ~ G(n, p1, q1)`, then every non-edge with probability `p̄`.
    TwoStage,
    /// Crossing edges in three rounds, block edges only at low-degree vertices.
    ThreeStage,
    /// `G_b ~ G(n, p1, q)`, then block non-edges with probability `p̄`.
    Case3,
}

impl Variant {
    /// Default `a`: `1` for the two- and Case-3 schedules, `√ln n` for the
    /// three-stage one (`a → ∞` with `a = o(ln n)`).
    pub fn default_a(self, n: usize) -> f64 {
        match self {
            Variant::TwoStage | Variant::Case3 => 1.0,
            Variant::ThreeStage => (n as f64).ln().sqrt(),
        }
    }
}

impl std::str::FromStr for Variant {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "two-stage" | "two_stage" => Ok(Variant::TwoStage),
            "three-stage" | "three_stage" => Ok(Variant::ThreeStage),
            "case3" => Ok(Variant::Case3),
            other => Err(format!("unknown exposure variant `{other}`")),
        }
    }
}

/// Round probabilities of a multi-round exposure.
///
/// For a variant that does not use `p̄` (or `q̄`) the field is zero.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExposureSchedule {
    pub variant: Variant,
    pub params: ModelParams,
    pub a: f64,
    pub p_bar: f64,
    pub q_bar: f64,
    pub p1: f64,
    pub q1: f64,
    pub p_star: f64,
    pub q_star: f64,
}

/// `1 - (1 - x) / (1 - y)^power`, rejected when negative.
fn stage_one(name: &'static str, x: f64, y: f64, power: i32) -> Result<f64, ExposureError> {
    let v = 1.0 - (1.0 - x) / (1.0 - y).powi(power);
    // rounding at the boundary x = 1 - (1 - y)^power
    if v < 0.0 && v > -4.0 * f64::EPSILON {
        return Ok(0.0);
    }
    if v < 0.0 {
        return Err(ExposureError::Infeasible { name, value: v });
    }
    Ok(v)
}

/// `x̄ (1 - x) / ((1 - x̄) x)`; zero when `x = 0` (no edges to delete).
fn deletion(bar: f64, x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        bar * (1.0 - x) / ((1.0 - bar) * x)
    }
}

/// Probability `r` with `x (1 - r) = x1`; zero when `x = 0`.
fn deletion_from_target(x: f64, x1: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        1.0 - x1 / x
    }
}

impl ExposureSchedule {
    /// Builds the schedule with `p̄` (or `q̄`) equal to `a / (n ln n)`.
    pub fn new(variant: Variant, params: ModelParams, a: f64) -> Result<Self, ExposureError> {
        if !(a.is_finite() && a >= 0.0) {
            return Err(ExposureError::BadConstant(a));
        }
        let n = params.n() as f64;
        let bar = a / (n * n.ln());
        Self::with_bar(variant, params, bar, a)
    }

    /// Builds the schedule from the sprinkling probability directly.
    pub fn from_bar(variant: Variant, params: ModelParams, bar: f64) -> Result<Self, ExposureError> {
        let n = params.n() as f64;
        Self::with_bar(variant, params, bar, bar * n * n.ln())
    }

    fn with_bar(
        variant: Variant,
        params: ModelParams,
        bar: f64,
        a: f64,
    ) -> Result<Self, ExposureError> {
        if !(0.0..1.0).contains(&bar) {
            return Err(ExposureError::BadBar(bar));
        }
        let (p, q) = (params.p, params.q);
        let s = match variant {
            Variant::TwoStage => {
                let p1 = stage_one("p1", p, bar, 1)?;
                let q1 = stage_one("q1", q, bar, 1)?;
                Self {
                    variant,
                    a,
                    p_bar: bar,
                    q_bar: 0.0,
                    p1,
                    q1,
                    p_star: deletion(bar, p),
                    q_star: deletion(bar, q),
                    params,
                }
            }
            Variant::ThreeStage => {
                let q1 = stage_one("q1", q, bar, 2)?;
                Self {
                    variant,
                    a,
                    p_bar: 0.0,
                    q_bar: bar,
                    p1: p,
                    q1,
                    p_star: 0.0,
                    q_star: deletion_from_target(q, q1),
                    params,
                }
            }
            Variant::Case3 => {
                let p1 = stage_one("p1", p, bar, 1)?;
                Self {
                    variant,
                    a,
                    p_bar: bar,
                    q_bar: 0.0,
                    p1,
                    q1: q,
                    p_star: deletion(bar, p),
                    q_star: 0.0,
                    params,
                }
            }
        };
        Ok(s)
    }

    /// Default schedule for `variant` using [`Variant::default_a`].
    pub fn default_for(variant: Variant, params: ModelParams) -> Result<Self, ExposureError> {
        let a = variant.default_a(params.n());
        Self::new(variant, params, a)
    }

    /// Largest deviation among the coupling identities that apply to this
    /// variant.
    pub fn identity_residual(&self) -> f64 {
        let (p, q) = (self.params.p, self.params.q);
        let mut worst: f64 = 0.0;
        let mut check = |lhs: f64, rhs: f64| worst = worst.max((lhs - rhs).abs());
        match self.variant {
            Variant::TwoStage => {
                check(1.0 - (1.0 - self.p1) * (1.0 - self.p_bar), p);
                check(1.0 - (1.0 - self.q1) * (1.0 - self.p_bar), q);
            }
            Variant::ThreeStage => {
                check(1.0 - (1.0 - self.q1) * (1.0 - self.q_bar).powi(2), q);
            }
            Variant::Case3 => {
                check(1.0 - (1.0 - self.p1) * (1.0 - self.p_bar), p);
            }
        }
        if p > 0.0 {
            check(p * (1.0 - self.p_star), self.p1);
        }
        if q > 0.0 {
            check(q * (1.0 - self.q_star), self.q1);
        }
        worst
    }
}
