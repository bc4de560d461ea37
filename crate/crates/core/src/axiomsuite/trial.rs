use sha2::{Digest, Sha256};

use crate::concat::ConMor;
use crate::error::Result;
use crate::numkernel::{Matrix, Tolerances};

/// Accumulates residuals and the instance digest of one trial.
///
/// Boolean conditions that fail count as a residual of 1. Errors raised while
/// building witnesses count as failures too.
pub struct Trial {
    tols: Tolerances,
    mutate: bool,
    worst: f64,
    pass: bool,
    hasher: Sha256,
    skipped: Option<String>,
}

pub(crate) struct TrialOutcome {
    pub worst: f64,
    pub pass: bool,
    pub digest: [u8; 32],
    pub skipped: Option<String>,
}

impl Trial {
    pub(crate) fn new(tols: Tolerances, mutate: bool) -> Self {
        Self {
            tols,
            mutate,
            worst: 0.0,
            pass: true,
            hasher: Sha256::new(),
            skipped: None,
        }
    }

    pub fn tols(&self) -> &Tolerances {
        &self.tols
    }

    /// Whether this trial should corrupt its instance.
    pub fn mutate(&self) -> bool {
        self.mutate
    }

    /// Records `r` against `tol`. NaN fails.
    pub fn residual(&mut self, r: f64, tol: f64) {
        let r = if r.is_nan() { f64::INFINITY } else { r };
        self.worst = self.worst.max(r);
        if !(r <= tol) {
            self.pass = false;
        }
    }

    pub fn eq(&mut self, r: f64) {
        self.residual(r, self.tols.eq);
    }

    pub fn ortho(&mut self, r: f64) {
        self.residual(r, self.tols.ortho);
    }

    pub fn recon(&mut self, r: f64) {
        self.residual(r, self.tols.recon);
    }

    pub fn require(&mut self, cond: bool) {
        if !cond {
            self.residual(1.0, 0.0);
        }
    }

    /// Unwraps a construction; an error fails the trial.
    pub fn attempt<T>(&mut self, r: Result<T>) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(_) => {
                self.require(false);
                None
            }
        }
    }

    /// Feeds instance data into the digest.
    pub fn absorb(&mut self, m: &Matrix) {
        let (r, c) = m.shape();
        self.hasher.update((r as u64).to_le_bytes());
        self.hasher.update((c as u64).to_le_bytes());
        for z in m.data() {
            self.hasher.update(z.re.to_bits().to_le_bytes());
            self.hasher.update(z.im.to_bits().to_le_bytes());
        }
    }

    pub fn absorb_all(&mut self, ms: &[&ConMor]) {
        for m in ms {
            self.absorb(m.mat());
        }
    }

    pub fn absorb_f64(&mut self, x: f64) {
        self.hasher.update(x.to_bits().to_le_bytes());
    }

    /// Marks the trial as not applicable.
    pub fn skip(&mut self, reason: &str) {
        self.skipped = Some(reason.to_string());
    }

    pub(crate) fn finish(self) -> TrialOutcome {
        TrialOutcome {
            worst: self.worst,
            pass: self.pass,
            digest: self.hasher.finalize().into(),
            skipped: self.skipped,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    #[test]
    fn nan_and_errors_fail() {
        let mut t = Trial::new(Tolerances::default(), false);
        t.eq(1e-12);
        assert!(t.finish().pass);
        let mut t = Trial::new(Tolerances::default(), false);
        t.eq(f64::NAN);
        let o = t.finish();
        assert!(!o.pass && o.worst.is_infinite());
        let mut t = Trial::new(Tolerances::default(), false);
        assert!(t.attempt::<()>(Err(Error::Parse("x".into()))).is_none());
        assert!(!t.finish().pass);
    }
}
