//! Exact samplers for the multiparametric random hypergraph and its lower
//! and upper closures.
//!
//! Every face coin is a pure function of `(master seed, trial, dimension,
//! face rank)`, chained through a 64-bit finalizer and mapped to a uniform
//! value in `[0, 1)`. Both closures of the same seed therefore share coins
//! face by face, the lower closure only evaluates coins for faces whose
//! boundary is present, and results are identical under any execution order.

use std::collections::{BTreeSet, HashSet};

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::complex::{mix64, SimplicialComplex, MAX_SIMPLICES};
use crate::error::{Error, Result};
use crate::simplex::Simplex;

/// Hard bound on the number of candidate faces a single sample may
/// enumerate, across all dimensions.
pub const ENUM_LIMIT: u64 = 50_000_000;

/// Exponents beyond the supplied list.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Tail {
    /// Faces above the supplied dimensions never appear (probability zero).
    Zero,
    /// Faces above the supplied dimensions always pass their coin
    /// (probability one), so the complex fills up to the dimension cap.
    One,
}

/// Model parameters: face-probability exponents `α_1..α_D` (probability of a
/// dimension-`i` face is `n^{-α_i}`), the tail beyond them, and a hard
/// dimension cap (defaults to `D`).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParamVector {
    pub alpha: Vec<f64>,
    pub tail: Tail,
    #[serde(default)]
    pub dim_cap: Option<usize>,
}

impl ParamVector {
    pub fn new(alpha: Vec<f64>, tail: Tail, dim_cap: Option<usize>) -> Result<ParamVector> {
        let pv = ParamVector {
            alpha,
            tail,
            dim_cap,
        };
        pv.validate()?;
        Ok(pv)
    }

    /// Exponents from per-dimension probabilities at a fixed `n`:
    /// `α_i = -log_n p_i` (zero probability maps to an infinite exponent).
    pub fn from_probabilities(
        n: usize,
        probabilities: &[f64],
        tail: Tail,
        dim_cap: Option<usize>,
    ) -> Result<ParamVector> {
        if n < 2 {
            return Err(Error::invalid(
                "probability conversion needs n of at least 2",
            ));
        }
        let ln_n = (n as f64).ln();
        let alpha = probabilities
            .iter()
            .map(|&p| {
                if !(0.0..=1.0).contains(&p) || p.is_nan() {
                    return Err(Error::invalid(format!("probability {p} is outside [0, 1]")));
                }
                Ok(if p == 0.0 {
                    f64::INFINITY
                } else {
                    -p.ln() / ln_n
                })
            })
            .collect::<Result<Vec<f64>>>()?;
        ParamVector::new(alpha, tail, dim_cap)
    }

    pub fn validate(&self) -> Result<()> {
        for (i, a) in self.alpha.iter().enumerate() {
            if a.is_nan() || *a < 0.0 {
                return Err(Error::invalid(format!(
                    "exponent for dimension {} must be non-negative, got {a}",
                    i + 1
                )));
            }
        }
        if self.tail == Tail::One && self.resolved_dim_cap() < self.alpha.len() {
            return Err(Error::invalid(
                "a probability-one tail needs a dimension cap at least as large as the exponent list",
            ));
        }
        Ok(())
    }

    /// The dimension cap in force: explicit, or the length of the list.
    pub fn resolved_dim_cap(&self) -> usize {
        self.dim_cap.unwrap_or(self.alpha.len())
    }

    /// Exponent in force for dimension `i ≥ 1`: supplied value, then the
    /// tail, and infinite beyond the cap (no such faces are ever sampled).
    pub fn effective_alpha(&self, i: usize) -> f64 {
        debug_assert!(i >= 1);
        if i > self.resolved_dim_cap() {
            return f64::INFINITY;
        }
        match self.alpha.get(i - 1) {
            Some(&a) => a,
            None => match self.tail {
                Tail::Zero => f64::INFINITY,
                Tail::One => 0.0,
            },
        }
    }

    /// Effective exponents for dimensions `1..=upto`, for the threshold
    /// calculus.
    pub fn padded_alphas(&self, upto: usize) -> Vec<f64> {
        (1..=upto).map(|i| self.effective_alpha(i)).collect()
    }

    /// Face probability for dimension `i` at scale `n`.
    pub fn probability(&self, n: usize, i: usize) -> f64 {
        alpha_to_p(n, self.effective_alpha(i))
    }
}

/// `n^{-alpha}`, the face probability for one dimension.
pub fn alpha_to_p(n: usize, alpha: f64) -> f64 {
    (n as f64).powf(-alpha)
}

/// Seed for one sampled complex: a master seed and a trial index. Each pair
/// selects an independent coin stream.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampleSeed {
    pub master: u64,
    pub trial: u64,
}

impl SampleSeed {
    pub fn new(master: u64, trial: u64) -> SampleSeed {
        SampleSeed { master, trial }
    }

    /// Seed for trial `trial` at scale `n` under one experiment master seed,
    /// stable across execution orders and worker counts.
    pub fn for_trial(master: u64, n: usize, trial: u64) -> SampleSeed {
        SampleSeed {
            master: mix64(master ^ mix64(n as u64)),
            trial,
        }
    }
}

/// Lazy coin stream: one uniform value per `(dimension, face rank)`.
#[derive(Debug, Clone, Copy)]
pub struct CoinStream {
    seed: SampleSeed,
}

impl CoinStream {
    pub fn new(seed: SampleSeed) -> CoinStream {
        CoinStream { seed }
    }

    /// Uniform value in `[0, 1)` for one face.
    pub fn uniform(&self, dim: usize, rank: u64) -> f64 {
        let mut h = mix64(self.seed.master);
        h = mix64(h ^ self.seed.trial);
        h = mix64(h ^ dim as u64);
        h = mix64(h ^ rank);
        (h >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Whether the face's coin succeeds at probability `p` (threshold
    /// comparison, so raising `p` never turns a success into a failure).
    pub fn coin(&self, dim: usize, rank: u64, p: f64) -> bool {
        self.uniform(dim, rank) < p
    }
}

fn binomial_u128(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for j in 0..k {
        acc = acc * (n - j) / (j + 1);
    }
    acc
}

/// Rank of a sorted vertex set within its dimension via the combinatorial
/// number system: `Σ_j C(v_j, j+1)`. Bijective onto `0..C(n, k+1)` and
/// independent of `n`, so the same face always draws the same coin.
pub fn face_rank(simplex: &Simplex) -> u64 {
    let mut rank: u128 = 0;
    for (j, &v) in simplex.vertices().iter().enumerate() {
        rank += binomial_u128(v as u128, j as u128 + 1);
    }
    debug_assert!(rank <= u64::MAX as u128);
    rank as u64
}

/// Total faces a sample would enumerate; errors beyond [`ENUM_LIMIT`].
fn check_enumeration_budget(n: usize, params: &ParamVector) -> Result<()> {
    let mut total: u128 = 0;
    for k in 1..=params.resolved_dim_cap() {
        if params.effective_alpha(k).is_finite() {
            total += binomial_u128(n as u128, k as u128 + 1);
        }
        if total > ENUM_LIMIT as u128 {
            return Err(Error::ResourceLimit(format!(
                "sampling would enumerate more than {ENUM_LIMIT} faces at n = {n}; \
                 lower the dimension cap or n"
            )));
        }
    }
    Ok(())
}

/// Marks every face of each dimension `1..=dim_cap` independently with its
/// dimension's probability. Returns the marked faces per dimension
/// (index 0 holds dimension 1). Deterministic given the seed.
pub fn sample_hypergraph(
    n: usize,
    params: &ParamVector,
    seed: SampleSeed,
) -> Result<Vec<Vec<Simplex>>> {
    params.validate()?;
    check_enumeration_budget(n, params)?;
    let stream = CoinStream::new(seed);
    let cap = params.resolved_dim_cap();
    let mut marked: Vec<Vec<Simplex>> = Vec::with_capacity(cap);
    for k in 1..=cap {
        let p = params.probability(n, k);
        let mut faces = Vec::new();
        if p > 0.0 && n > k {
            for combo in (0..n as u32).combinations(k + 1) {
                let face = Simplex::from_sorted_unchecked(combo);
                if stream.coin(k, face_rank(&face), p) {
                    faces.push(face);
                }
            }
        }
        marked.push(faces);
    }
    Ok(marked)
}

/// Lower closure: built dimension by dimension, a face enters iff its entire
/// boundary entered and its own coin succeeds. All `n` vertices are present.
/// Coins are only drawn for boundary-complete candidates, and those coins
/// agree with [`sample_hypergraph`] on the same seed.
pub fn lower_closure(
    n: usize,
    params: &ParamVector,
    seed: SampleSeed,
) -> Result<SimplicialComplex> {
    params.validate()?;
    let stream = CoinStream::new(seed);
    let cap = params.resolved_dim_cap();
    let mut set: BTreeSet<Simplex> = (0..n as u32).map(Simplex::vertex).collect();
    let mut prev: Vec<Simplex> = set.iter().cloned().collect();
    let mut total = prev.len();
    for k in 1..=cap {
        let p = params.probability(n, k);
        if p <= 0.0 || prev.is_empty() {
            break;
        }
        if prev.len() as u64 * n as u64 > ENUM_LIMIT {
            return Err(Error::ResourceLimit(format!(
                "lower closure at dimension {k} would scan more than {ENUM_LIMIT} candidates"
            )));
        }
        let prev_set: HashSet<&Simplex> = prev.iter().collect();
        let mut next: Vec<Simplex> = Vec::new();
        for s in &prev {
            let top = *s.vertices().last().expect("simplices are non-empty");
            for v in top + 1..n as u32 {
                let candidate = s.extend_above(v);
                if candidate.facets().all(|f| prev_set.contains(&f))
                    && stream.coin(k, face_rank(&candidate), p)
                {
                    next.push(candidate);
                }
            }
        }
        total += next.len();
        if total > MAX_SIMPLICES {
            return Err(Error::ResourceLimit(format!(
                "lower closure exceeds {MAX_SIMPLICES} simplices"
            )));
        }
        set.extend(next.iter().cloned());
        prev = next;
    }
    Ok(SimplicialComplex::from_closed_set(n, set))
}

/// Upper closure: the downward closure of every marked face, plus all `n`
/// vertices. Shares coins with [`lower_closure`] on the same seed, so the
/// lower closure is always contained in it.
pub fn upper_closure(
    n: usize,
    params: &ParamVector,
    seed: SampleSeed,
) -> Result<SimplicialComplex> {
    let marked = sample_hypergraph(n, params, seed)?;
    let mut facets: Vec<Simplex> = (0..n as u32).map(Simplex::vertex).collect();
    facets.extend(marked.into_iter().flatten());
    SimplicialComplex::from_facets(n, &facets)
}
