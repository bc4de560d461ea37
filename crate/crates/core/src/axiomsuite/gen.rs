//! Random instances: contractions, isometries, unitaries, partial isometries,
//! positive contractions and injective maps.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use sha2::{Digest, Sha256};

use super::GenConfig;
use crate::concat::{ConMor, HObj};
use crate::error::{Error, Result};
use crate::numkernel::{range_isometry, Field, Matrix, Scalar};

/// Largest factor dimension used when an instance is tensored.
pub const TENSOR_DIM_CAP: usize = 4;

/// Words reserved per trial on a stream; trials never overlap.
const WORDS_PER_TRIAL: u128 = 1 << 32;

/// Stream number of a check id: the first eight bytes of its SHA-256.
pub fn stream_of(id: &str) -> u64 {
    let h = Sha256::digest(id.as_bytes());
    u64::from_le_bytes(h[..8].try_into().expect("digest has 32 bytes"))
}

/// A seeded source of instances for one trial of one check.
#[derive(Debug, Clone)]
pub struct Gen {
    field: Field,
    dim_max: usize,
    rng: ChaCha8Rng,
}

impl Gen {
    /// Trial `trial` of the stream named `id` under `cfg.seed`.
    pub fn new(cfg: &GenConfig, id: &str, trial: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        rng.set_stream(stream_of(id));
        rng.set_word_pos(trial as u128 * WORDS_PER_TRIAL);
        Self {
            field: cfg.field,
            dim_max: cfg.dim_max,
            rng,
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim_max(&self) -> usize {
        self.dim_max
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    /// Uniform in `[0, 1)`.
    pub fn uniform(&mut self) -> f64 {
        self.rng.random()
    }

    /// Uniform in `lo..=hi`.
    pub fn range(&mut self, lo: usize, hi: usize) -> usize {
        self.rng.random_range(lo..=hi)
    }

    /// A dimension in `1..=dim_max`.
    pub fn dim(&mut self) -> usize {
        self.range(1, self.dim_max)
    }

    /// A dimension in `1..=min(dim_max, 4)`, for factors of tensor products.
    pub fn small_dim(&mut self) -> usize {
        self.range(1, self.dim_max.min(TENSOR_DIM_CAP))
    }

    /// An object of dimension in `1..=dim_max`.
    pub fn obj(&mut self) -> HObj {
        HObj::new(self.field, self.dim())
    }

    /// An object of dimension in `1..=min(dim_max, 4)`.
    pub fn small_obj(&mut self) -> HObj {
        HObj::new(self.field, self.small_dim())
    }

    fn entry(&mut self) -> Complex64 {
        match self.field {
            Field::Real => Complex64::new(self.rng.sample(StandardNormal), 0.0),
            Field::Complex => {
                let s = std::f64::consts::FRAC_1_SQRT_2;
                let re: f64 = self.rng.sample(StandardNormal);
                let im: f64 = self.rng.sample(StandardNormal);
                Complex64::new(s * re, s * im)
            }
        }
    }

    /// A `rows × cols` matrix of standard Gaussian entries.
    pub fn gaussian(&mut self, rows: usize, cols: usize) -> Matrix {
        let data = (0..rows * cols).map(|_| self.entry()).collect();
        Matrix::new(self.field, rows, cols, data)
    }

    /// A unit vector as an `n × 1` matrix.
    pub fn unit_vector(&mut self, n: usize) -> Matrix {
        loop {
            let g = self.gaussian(n, 1);
            let norm = g.frobenius_norm();
            if norm > 1e-6 || n == 0 {
                return g.scale_real(if n == 0 { 1.0 } else { 1.0 / norm });
            }
        }
    }

    /// A scalar of the field with modulus uniform in `[lo, hi]` and uniform
    /// phase (a random sign over the reals).
    pub fn scalar(&mut self, lo: f64, hi: f64) -> Scalar {
        let r = lo + (hi - lo) * self.uniform();
        let z = match self.field {
            Field::Real => {
                if self.rng.random::<bool>() {
                    Complex64::new(r, 0.0)
                } else {
                    Complex64::new(-r, 0.0)
                }
            }
            Field::Complex => Complex64::from_polar(r, std::f64::consts::TAU * self.uniform()),
        };
        Scalar::new(self.field, z)
    }

    /// A contraction `dom → cod`: Gaussian, scaled to norm `u ~ U[0,1)`.
    pub fn contraction(&mut self, dom: usize, cod: usize) -> ConMor {
        let g = self.gaussian(cod, dom);
        let u = self.uniform();
        let n = g.opnorm();
        let m = if n > 0.0 { g.scale_real(u / n) } else { g };
        ConMor::from_matrix(m).expect("norm scaled below one")
    }

    /// A contraction `dom → cod` of rank at most `rank`.
    pub fn low_rank(&mut self, dom: usize, cod: usize, rank: usize) -> ConMor {
        let x = self.gaussian(cod, rank);
        let y = self.gaussian(rank, dom);
        let g = x.matmul(&y);
        let u = self.uniform();
        let n = g.opnorm();
        let m = if n > 0.0 { g.scale_real(u / n) } else { g };
        ConMor::from_matrix(m).expect("norm scaled below one")
    }

    /// An isometry `dom → cod`, orthonormalizing Gaussian columns.
    pub fn isometry(&mut self, dom: usize, cod: usize) -> Result<ConMor> {
        if dom > cod {
            return Err(Error::OutOfDomain(format!(
                "no isometry from dimension {dom} into dimension {cod}"
            )));
        }
        loop {
            let q = range_isometry(&self.gaussian(cod, dom));
            if q.cols() == dom {
                return Ok(ConMor::from_matrix_unchecked(q));
            }
        }
    }

    pub fn unitary(&mut self, n: usize) -> ConMor {
        self.isometry(n, n).expect("square")
    }

    /// A partial isometry `dom → cod` of random rank: an isometry padded with
    /// zero columns, composed with a unitary on the domain.
    pub fn partial_isometry(&mut self, dom: usize, cod: usize) -> ConMor {
        let r = self.range(0, dom.min(cod));
        let v = self.isometry(r, cod).expect("r ≤ cod");
        let padded = v.mat().hstack(&Matrix::zeros(self.field, cod, dom - r));
        let q = self.unitary(dom);
        ConMor::from_matrix_unchecked(padded.matmul(q.mat()))
    }

    /// `v · diag(U[0,1)) · v†` with `v` unitary.
    pub fn positive_contraction(&mut self, n: usize) -> ConMor {
        let v = self.unitary(n);
        let d: Vec<f64> = (0..n).map(|_| self.uniform()).collect();
        let m = v
            .mat()
            .matmul(&Matrix::diag_real(self.field, &d))
            .matmul(&v.mat().adjoint());
        ConMor::from_matrix_unchecked(m)
    }

    /// An injective contraction `dom → cod` with singular values in
    /// `[0.05, 1]`.
    pub fn injective(&mut self, dom: usize, cod: usize) -> Result<ConMor> {
        let u = self.isometry(dom, cod)?;
        let sigma: Vec<f64> = (0..dom).map(|_| 0.05 + 0.95 * self.uniform()).collect();
        let v = self.unitary(dom);
        let m = u
            .mat()
            .matmul(&Matrix::diag_real(self.field, &sigma))
            .matmul(&v.mat().adjoint());
        Ok(ConMor::from_matrix_unchecked(m))
    }
}
