//! Closed-form exponent calculus for the multiparametric models.
//!
//! Exponent vectors list `α_1..α_D`; `alphas[i-1]` is the exponent for
//! dimension-`i` faces (face probability `n^{-α_i}`). Callers pad the slice
//! with the model's tail exponents (`0` for a probability-one tail, `+∞` for
//! a probability-zero tail); entries beyond the slice are treated as zero.
//! All quantities here are logarithms base `n` of expected counts, computed
//! in double precision with a fixed boundary tolerance.

use serde::Serialize;

use crate::complex::{binomial, SimplicialComplex};
use crate::error::{Error, Result};

/// Tolerance for boundary detection (threshold sums hitting their critical
/// value, top growth exponent hitting an integer).
pub const BOUNDARY_TOL: f64 = 1e-9;

fn binom_f(n: usize, k: usize) -> f64 {
    binomial(n, k) as f64
}

fn alpha_at(alphas: &[f64], i: usize) -> f64 {
    debug_assert!(i >= 1);
    alphas.get(i - 1).copied().unwrap_or(0.0)
}

/// First threshold sum for degree `k`: `Σ_{i=1}^{k+1} C(k+1, i) α_i`.
/// Below 1 the degree-`k` rational cohomology vanishes asymptotically.
pub fn s1(k: usize, alphas: &[f64]) -> f64 {
    (1..=k + 1)
        .map(|i| {
            let a = alpha_at(alphas, i);
            if a == 0.0 {
                0.0
            } else {
                binom_f(k + 1, i) * a
            }
        })
        .sum()
}

/// Second threshold sum for degree `k`: `Σ_{i=1}^{k} C(k+2, i+1) α_i`.
/// Above `k+2` the degree-`k` cohomology vanishes over every coefficient
/// ring asymptotically.
pub fn s2(k: usize, alphas: &[f64]) -> f64 {
    (1..=k)
        .map(|i| {
            let a = alpha_at(alphas, i);
            if a == 0.0 {
                0.0
            } else {
                binom_f(k + 2, i + 1) * a
            }
        })
        .sum()
}

/// Asymptotic classification of degree-`k` cohomology of the lower model.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CohomologyRegion {
    /// Vanishes rationally.
    VanishesRationally,
    /// Vanishes over every coefficient field.
    VanishesIntegrally,
    /// Nonvanishing rationally.
    NonvanishingRationally,
    /// Within tolerance of a threshold boundary, or outside every theorem
    /// hypothesis (for example a zero exponent).
    Indeterminate,
}

impl std::fmt::Display for CohomologyRegion {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self {
            CohomologyRegion::VanishesRationally => "vanishes_rationally",
            CohomologyRegion::VanishesIntegrally => "vanishes_integrally",
            CohomologyRegion::NonvanishingRationally => "nonvanishing_rationally",
            CohomologyRegion::Indeterminate => "indeterminate",
        };
        f.write_str(name)
    }
}

/// Classifies degree-`k` cohomology from the threshold sums. Boundary hits
/// (within [`BOUNDARY_TOL`]) are reported as indeterminate, never silently
/// assigned to a side; the nonvanishing region additionally requires every
/// supplied exponent to be positive.
pub fn cohomology_region(k: usize, alphas: &[f64]) -> CohomologyRegion {
    let s1 = s1(k, alphas);
    let s2 = s2(k, alphas);
    let critical = (k + 2) as f64;
    if (s1 - 1.0).abs() <= BOUNDARY_TOL {
        return CohomologyRegion::Indeterminate;
    }
    if s2.is_finite() && (s2 - critical).abs() <= BOUNDARY_TOL {
        return CohomologyRegion::Indeterminate;
    }
    if s2 > critical {
        return CohomologyRegion::VanishesIntegrally;
    }
    if s1 < 1.0 {
        return CohomologyRegion::VanishesRationally;
    }
    if s1 >= 1.0 && s2 < critical && alphas.iter().all(|&a| a > 0.0) {
        return CohomologyRegion::NonvanishingRationally;
    }
    CohomologyRegion::Indeterminate
}

/// Derived exponents of the upper model for a finite exponent list with a
/// probability-zero tail (no faces above dimension `D = alphas.len()`).
///
/// `beta[i-1] = i + 1 - α_i` is the growth exponent of marked `i`-faces;
/// `gamma[k-1] = max_{i ≥ k} beta_i` is the growth exponent of `k`-faces of
/// the closure; `l = ⌊max beta⌋` is the asymptotic collapse dimension;
/// `nu_k = 2 gamma_k - k` and `l_prime = max{k ≥ 1 : nu_k ≥ 0}` (0 when
/// empty) bound the dimensions that survive; `excess[k-1] = gamma_k - k`
/// drops by at least one per dimension.
#[derive(Debug, Clone, Serialize)]
pub struct UpperModelParams {
    pub beta: Vec<f64>,
    pub beta_max: f64,
    pub l: i64,
    pub gamma: Vec<f64>,
    pub nu: Vec<f64>,
    pub l_prime: i64,
    pub excess: Vec<f64>,
    /// Set when `beta_max` is within [`BOUNDARY_TOL`] of an integer; the
    /// collapse statements exclude that boundary.
    pub beta_integer_boundary: bool,
}

impl UpperModelParams {
    /// `gamma_k` for any `k ≥ 1`; negative infinity above the last supplied
    /// dimension (no such faces exist under the probability-zero tail).
    pub fn gamma_of(&self, k: usize) -> f64 {
        debug_assert!(k >= 1);
        self.gamma.get(k - 1).copied().unwrap_or(f64::NEG_INFINITY)
    }

    /// `nu_k = 2 gamma_k - k` for any `k ≥ 1`.
    pub fn nu_of(&self, k: usize) -> f64 {
        2.0 * self.gamma_of(k) - k as f64
    }

    /// `excess_k = gamma_k - k` for any `k ≥ 1`.
    pub fn excess_of(&self, k: usize) -> f64 {
        self.gamma_of(k) - k as f64
    }
}

/// Computes the upper-model exponents. The supplied list is taken as the
/// full effective parameter set (probability-zero tail beyond it); for a
/// probability-one tail, pad with zeros up to the dimension cap first.
pub fn upper_model_params(alphas: &[f64]) -> Result<UpperModelParams> {
    if alphas.is_empty() {
        return Err(Error::invalid("at least one exponent is required"));
    }
    if alphas.iter().any(|a| !a.is_finite() || *a < 0.0) {
        return Err(Error::invalid("exponents must be finite and non-negative"));
    }
    let d = alphas.len();
    let beta: Vec<f64> = (1..=d).map(|i| (i + 1) as f64 - alphas[i - 1]).collect();
    let beta_max = beta.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let gamma: Vec<f64> = (1..=d)
        .map(|k| {
            beta[k - 1..]
                .iter()
                .copied()
                .fold(f64::NEG_INFINITY, f64::max)
        })
        .collect();
    let nu: Vec<f64> = (1..=d).map(|k| 2.0 * gamma[k - 1] - k as f64).collect();
    let excess: Vec<f64> = (1..=d).map(|k| gamma[k - 1] - k as f64).collect();
    let l = beta_max.floor() as i64;
    let l_prime = (1..=d)
        .rev()
        .find(|&k| nu[k - 1] >= 0.0)
        .map_or(0, |k| k as i64);
    let beta_integer_boundary = (beta_max - beta_max.round()).abs() <= BOUNDARY_TOL;
    Ok(UpperModelParams {
        beta,
        beta_max,
        l,
        gamma,
        nu,
        l_prime,
        excess,
        beta_integer_boundary,
    })
}

/// Base-`n` logarithm of the expected number of labeled copies of a finite
/// complex in the lower model: `f_0 - Σ_{i≥1} f_i α_i`.
#[derive(Debug, Clone, Serialize)]
pub struct LogExpectation {
    pub value: f64,
    pub f_vector: Vec<usize>,
}

pub fn log_expectation(a: &SimplicialComplex, alphas: &[f64]) -> LogExpectation {
    let f = a.f_vector().clone();
    let mut value = f.first().copied().unwrap_or(0) as f64;
    for (i, &count) in f.iter().enumerate().skip(1) {
        if count > 0 {
            value -= count as f64 * alpha_at(alphas, i);
        }
    }
    LogExpectation { value, f_vector: f }
}

/// Cost of an expansion step: the drop in log-expected copy count from
/// `before` to `after` (positive means the larger complex is rarer).
pub fn expansion_cost(
    before: &SimplicialComplex,
    after: &SimplicialComplex,
    alphas: &[f64],
) -> Result<f64> {
    if !before.iter().all(|s| after.contains(s)) {
        return Err(Error::invalid(
            "expansion target must contain the starting complex",
        ));
    }
    Ok(log_expectation(before, alphas).value - log_expectation(after, alphas).value)
}

/// The α-weighted count of simplices through one edge of a complete complex
/// on `m+1` vertices: `Σ_{i=1}^{m} C(m-1, i-1) α_i`. This is the least cost
/// any edge-adding expansion can pay in an `m`-dimensional complex, and it
/// is at least `1/(k+1)` whenever `s1(k, α) ≥ 1` and `m > k`.
pub fn minimal_edge_addition_cost(m: usize, alphas: &[f64]) -> f64 {
    (1..=m)
        .map(|i| {
            let a = alpha_at(alphas, i);
            if a == 0.0 {
                0.0
            } else {
                binom_f(m - 1, i - 1) * a
            }
        })
        .sum()
}

/// Largest vertex count of a strong component that survives in the critical
/// window for degree `k`: `2k + 1 + a(k)` with `a(2) = 4`, `a(3) = 3`, and
/// `a(k) = 2` for `k ≥ 4`. Defined for `k ≥ 2`.
pub fn vertex_bound(k: usize) -> Result<usize> {
    if k < 2 {
        return Err(Error::invalid(
            "the vertex bound is defined for dimensions 2 and up",
        ));
    }
    let a = match k {
        2 => 4,
        3 => 3,
        _ => 2,
    };
    Ok(2 * k + 1 + a)
}

/// Log-cost of the budget step that glues `m` simplices of dimension `l+1`
/// with `v` fresh vertices onto a strongly connected complex in the upper
/// model: `m - excess_{l+1} - v - l`. With all-new vertices (`v = m - l`)
/// the cost is `-excess_{l+1} > 0`, and every reused vertex adds one.
pub fn upper_budget_cost(
    alphas: &[f64],
    z_before: &SimplicialComplex,
    m: usize,
    v: usize,
) -> Result<f64> {
    let params = upper_model_params(alphas)?;
    if params.beta_integer_boundary {
        return Err(Error::invalid(
            "top growth exponent sits on an integer boundary; the budget analysis needs a fractional exponent",
        ));
    }
    if params.l < 0 {
        return Err(Error::invalid(
            "budget analysis requires a positive top growth exponent",
        ));
    }
    let l = params.l;
    if (m as i64) <= l {
        return Err(Error::invalid(format!(
            "the glued face count must exceed the collapse dimension {l}"
        )));
    }
    if (v as i64) > m as i64 - l {
        return Err(Error::invalid(format!(
            "at most {} fresh vertices are possible for {m} glued faces",
            m as i64 - l
        )));
    }
    let target_dim = (l + 1) as usize;
    if z_before.f_vector().get(target_dim).copied().unwrap_or(0) > 0
        && !z_before.is_strongly_connected(target_dim)
    {
        return Err(Error::invalid(format!(
            "the starting complex must be strongly connected in dimension {target_dim}"
        )));
    }
    Ok(m as f64 - params.excess_of(target_dim) - v as f64 - l as f64)
}

/// Log-expected number of `k`-simplices in the upper model: `gamma_k`.
pub fn upper_simplex_log_expectation(alphas: &[f64], k: usize) -> Result<f64> {
    if k == 0 {
        return Err(Error::invalid(
            "vertices are always present; ask for dimension 1 or higher",
        ));
    }
    Ok(upper_model_params(alphas)?.gamma_of(k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplex::Simplex;

    fn complex(n: usize, facets: &[&[u32]]) -> SimplicialComplex {
        let fs: Vec<Simplex> = facets
            .iter()
            .map(|f| Simplex::new(f.to_vec()).unwrap())
            .collect();
        SimplicialComplex::from_facets(n, &fs).unwrap()
    }

    #[test]
    fn threshold_sums_match_hand_values() {
        assert!((s1(1, &[0.4, 0.3]) - 1.1).abs() < 1e-12);
        assert_eq!(s1(3, &[0.0, 0.0, 0.0, 0.0]), 0.0);
        let (a1, a2) = (0.3, 0.7);
        assert!((s2(2, &[a1, a2]) - (6.0 * a1 + 4.0 * a2)).abs() < 1e-12);
        assert!((s2(1, &[2.0, 2.0]) - 6.0).abs() < 1e-12);
    }

    #[test]
    fn threshold_sums_are_linear() {
        let x = [0.3, 0.7, 0.1];
        let y = [0.5, 0.2, 0.9];
        for k in 1..=3 {
            let combo: Vec<f64> = x.iter().zip(&y).map(|(a, b)| 2.0 * a + 0.25 * b).collect();
            assert!((s1(k, &combo) - (2.0 * s1(k, &x) + 0.25 * s1(k, &y))).abs() < 1e-12);
            assert!((s2(k, &combo) - (2.0 * s2(k, &x) + 0.25 * s2(k, &y))).abs() < 1e-12);
        }
    }

    #[test]
    fn region_classification() {
        assert_eq!(
            cohomology_region(1, &[0.3, 0.2]),
            CohomologyRegion::VanishesRationally
        );
        assert_eq!(
            cohomology_region(1, &[2.0, 2.0]),
            CohomologyRegion::VanishesIntegrally
        );
        assert_eq!(
            cohomology_region(1, &[0.45, 0.2]),
            CohomologyRegion::NonvanishingRationally
        );
        // s1 boundary.
        assert_eq!(
            cohomology_region(1, &[0.5, 0.0]),
            CohomologyRegion::Indeterminate
        );
        // Zero exponent keeps the nonvanishing branch out of reach.
        assert_eq!(
            cohomology_region(1, &[0.6, 0.0]),
            CohomologyRegion::Indeterminate
        );
        // Probability-zero tail: missing dimensions padded with infinity.
        assert_eq!(
            cohomology_region(1, &[0.5, f64::INFINITY]),
            CohomologyRegion::NonvanishingRationally
        );
        assert_eq!(
            cohomology_region(1, &[1.5, f64::INFINITY]),
            CohomologyRegion::VanishesIntegrally
        );
    }

    #[test]
    fn upper_params_match_hand_values() {
        let p = upper_model_params(&[0.5, 1.2]).unwrap();
        assert_eq!(p.beta, vec![1.5, 1.8]);
        assert!((p.beta_max - 1.8).abs() < 1e-12);
        assert_eq!(p.l, 1);
        assert_eq!(p.gamma, vec![1.8, 1.8]);
        assert_eq!(p.l_prime, 2);
        assert!(!p.beta_integer_boundary);
        assert_eq!(p.gamma_of(5), f64::NEG_INFINITY);

        // All beta zero: integer boundary flagged.
        let q = upper_model_params(&[2.0, 3.0]).unwrap();
        assert_eq!(q.beta, vec![0.0, 0.0]);
        assert_eq!(q.l, 0);
        assert!(q.beta_integer_boundary);
    }

    #[test]
    fn excess_drops_by_at_least_one() {
        let p = upper_model_params(&[0.5, 1.5, 3.5]).unwrap();
        for k in 1..p.excess.len() {
            assert!(p.excess[k] <= p.excess[k - 1] - 1.0 + 1e-12);
        }
        assert!(p.l_prime <= 2 * p.l + 1);
    }

    #[test]
    fn log_expectation_hand_values() {
        let triangle = complex(3, &[&[0, 1, 2]]);
        let le = log_expectation(&triangle, &[0.25, 0.5]);
        assert!((le.value - (3.0 - 3.0 * 0.25 - 0.5)).abs() < 1e-12);
        assert_eq!(le.f_vector, vec![3, 3, 1]);

        let sphere = complex(4, &[&[0, 1, 2], &[0, 1, 3], &[0, 2, 3], &[1, 2, 3]]);
        let le = log_expectation(&sphere, &[0.25, 0.5]);
        assert!((le.value - (4.0 - 6.0 * 0.25 - 4.0 * 0.5)).abs() < 1e-12);

        let vertex = complex(1, &[&[0]]);
        assert!((log_expectation(&vertex, &[9.0]).value - 1.0).abs() < 1e-12);
    }

    #[test]
    fn expansion_costs_match_hand_values() {
        let (a1, a2) = (0.23, 0.71);
        let alphas = [a1, a2];
        // Fill a triangle whose boundary is already present.
        let hollow = complex(3, &[&[0, 1], &[0, 2], &[1, 2]]);
        let filled = complex(3, &[&[0, 1, 2]]);
        let cost = expansion_cost(&hollow, &filled, &alphas).unwrap();
        assert!((cost - a2).abs() < 1e-12);
        // Horn fill: one new edge plus the triangle.
        let horn = complex(3, &[&[0, 1], &[1, 2]]);
        let cost = expansion_cost(&horn, &filled, &alphas).unwrap();
        assert!((cost - (a1 + a2)).abs() < 1e-12);
        // Orientation matters.
        assert!(expansion_cost(&filled, &horn, &alphas).is_err());
    }

    #[test]
    fn edge_addition_cost_formula() {
        let (a1, a2, a3) = (0.3, 0.5, 0.7);
        assert!((minimal_edge_addition_cost(2, &[a1, a2]) - (a1 + a2)).abs() < 1e-12);
        assert!(
            (minimal_edge_addition_cost(3, &[a1, a2, a3]) - (a1 + 2.0 * a2 + a3)).abs() < 1e-12
        );
    }

    #[test]
    fn vertex_bound_values() {
        assert_eq!(vertex_bound(2).unwrap(), 9);
        assert_eq!(vertex_bound(3).unwrap(), 10);
        assert_eq!(vertex_bound(5).unwrap(), 13);
        assert!(vertex_bound(1).is_err());
    }

    #[test]
    fn budget_cost_examples() {
        let alphas = [0.5, 1.5, 3.5];
        let empty = SimplicialComplex::empty(5);
        // l = 1, excess_2 = gamma_2 - 2 = 1.5 - 2 = -0.5.
        let cost = upper_budget_cost(&alphas, &empty, 2, 1).unwrap();
        assert!((cost - 0.5).abs() < 1e-12);
        // One fewer fresh vertex costs one more.
        let cost0 = upper_budget_cost(&alphas, &empty, 2, 0).unwrap();
        assert!((cost0 - 1.5).abs() < 1e-12);
        // Too many fresh vertices or too few faces are rejected.
        assert!(upper_budget_cost(&alphas, &empty, 2, 2).is_err());
        assert!(upper_budget_cost(&alphas, &empty, 1, 0).is_err());
        // Integer boundary is rejected.
        assert!(upper_budget_cost(&[1.0], &empty, 2, 1).is_err());
    }

    #[test]
    fn budget_cost_validates_strong_connectivity() {
        let alphas = [0.5, 1.5, 3.5]; // l = 1: dimension-2 faces are glued.
        let connected = complex(4, &[&[0, 1, 2], &[1, 2, 3]]);
        assert!(upper_budget_cost(&alphas, &connected, 3, 1).is_ok());
        let split = complex(6, &[&[0, 1, 2], &[3, 4, 5]]);
        assert!(upper_budget_cost(&alphas, &split, 3, 1).is_err());
    }

    #[test]
    fn upper_simplex_growth_exponent() {
        let alphas = [0.5, 1.5, 3.5];
        assert!((upper_simplex_log_expectation(&alphas, 1).unwrap() - 1.5).abs() < 1e-12);
        assert!((upper_simplex_log_expectation(&alphas, 3).unwrap() - 0.5).abs() < 1e-12);
        assert_eq!(
            upper_simplex_log_expectation(&alphas, 4).unwrap(),
            f64::NEG_INFINITY
        );
        assert!(upper_simplex_log_expectation(&alphas, 0).is_err());
    }
}
