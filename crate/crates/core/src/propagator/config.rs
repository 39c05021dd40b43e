use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scheme {
    Strang,
    Lie,
}

/// Time stepping parameters for `i∂_t u - Du = -iκ|u|^{p-1}u`.
///
/// `coupling` is `κ`; the equation of interest has `κ = 1`, and `κ = 0` switches
/// the nonlinearity off.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StepperConfig {
    pub p: f64,
    pub dt: f64,
    pub t_final: f64,
    pub scheme: Scheme,
    pub snapshot_stride: usize,
    #[serde(default = "default_coupling")]
    pub coupling: f64,
    #[serde(default = "default_dealias")]
    pub dealias: bool,
}

fn default_coupling() -> f64 {
    1.0
}

fn default_dealias() -> bool {
    true
}

impl StepperConfig {
    pub fn new(p: f64, dt: f64, t_final: f64) -> Result<Self> {
        let cfg = Self {
            p,
            dt,
            t_final,
            scheme: Scheme::Strang,
            snapshot_stride: 1,
            coupling: 1.0,
            dealias: true,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn with_scheme(mut self, scheme: Scheme) -> Self {
        self.scheme = scheme;
        self
    }

    pub fn with_stride(mut self, stride: usize) -> Self {
        self.snapshot_stride = stride;
        self
    }

    pub fn with_coupling(mut self, coupling: f64) -> Self {
        self.coupling = coupling;
        self
    }

    pub fn with_dealias(mut self, dealias: bool) -> Self {
        self.dealias = dealias;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidConfig(m));
        if !(self.p > 1.0) || !self.p.is_finite() {
            return bad(format!("nonlinearity power must satisfy p > 1, got {}", self.p));
        }
        if !(self.dt > 0.0) || !self.dt.is_finite() {
            return bad(format!("time step must be positive, got {}", self.dt));
        }
        if !(self.t_final >= 0.0) || !self.t_final.is_finite() {
            return bad(format!("final time must be nonnegative, got {}", self.t_final));
        }
        if self.t_final > 0.0 && self.dt > self.t_final * (1.0 + 1e-12) {
            return bad(format!("time step {} exceeds final time {}", self.dt, self.t_final));
        }
        if self.snapshot_stride == 0 {
            return bad("snapshot stride must be positive".into());
        }
        if !(self.coupling >= 0.0) || !self.coupling.is_finite() {
            return bad(format!("coupling must be nonnegative, got {}", self.coupling));
        }
        let steps = self.steps();
        if steps % self.snapshot_stride != 0 {
            return bad(format!(
                "{steps} steps are not a multiple of the snapshot stride {}",
                self.snapshot_stride
            ));
        }
        Ok(())
    }

    /// `ceil(T/dt)`, ignoring a relative overshoot below `1e-9`.
    pub fn steps(&self) -> usize {
        if self.t_final == 0.0 {
            return 0;
        }
        let ratio = self.t_final / self.dt;
        let rounded = ratio.round();
        if (ratio - rounded).abs() <= 1e-9 * ratio.max(1.0) {
            rounded as usize
        } else {
            ratio.ceil() as usize
        }
    }

    /// The step actually taken: `T / steps`, so the last step lands on `T`.
    pub fn effective_dt(&self) -> f64 {
        match self.steps() {
            0 => self.dt,
            n => self.t_final / n as f64,
        }
    }

    /// Whether the 2/3 truncation is active: flag set and `p` an odd integer at most 5.
    pub fn dealias_active(&self) -> bool {
        self.dealias && self.coupling != 0.0 && is_odd_integer_at_most_five(self.p)
    }
}

fn is_odd_integer_at_most_five(p: f64) -> bool {
    p == 3.0 || p == 5.0
}
