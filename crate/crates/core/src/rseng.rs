//! Rankin-Selberg torus sums.
//!
//! For K-invariant data the local integral `I(W, W', s)` collapses to a sum
//! over dominant cocharacters of the rank `m` torus. With `t = q^{-s}` and the
//! torus measure giving `A_m(O)` volume 1, the coefficient of `t^k` is
//!
//! ```text
//! sum_{|lambda| = k} W(lambda, 0, ..., 0) W'(lambda) delta_{B_m}^{-1}(lambda) u^{(n-m) k}
//! ```
//!
//! where the last factor is `nu^{-(n-m)/2}`. Support conditions on `W` limit
//! the sum to partitions with at most `m` parts, so every coefficient is a
//! finite exact sum.

use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::repdata::{compute_piu, GenericRep, UnramifiedLanglandsRep};
use crate::ringcore::{euler_expand, series_equal, EulerFactor, Scalar, SeriesComparison, TruncatedSeries};
use crate::symfunc::partitions_of;
use crate::whitfun::{
    delta_half_exponent, spherical_value, spherical_value_full_cone, EssentialWhittaker, Integrality,
    TorusWeight,
};

/// Default truncation order.
pub const DEFAULT_DEGREE: usize = 8;

#[derive(Clone, Copy, Debug)]
pub enum LeftArgument<'a> {
    /// A generic representation of `G_n`, entering through its essential
    /// Whittaker function.
    Generic(&'a GenericRep),
    /// An unramified representation of `G_n`, entering through its normalized
    /// spherical function.
    Spherical(&'a UnramifiedLanglandsRep),
}

#[derive(Clone, Copy, Debug)]
pub struct EngineOptions {
    pub integrality: Integrality,
    /// With the integrality indicator dropped, the sum also runs over
    /// dominant weights whose last entry is at least `-negative_window`.
    pub negative_window: u32,
    /// Check that the left factor vanishes on the first layer of
    /// non-partition weights (last entry `-1`).
    pub check_support: bool,
}

impl Default for EngineOptions {
    fn default() -> Self {
        EngineOptions {
            integrality: Integrality::Enforced,
            negative_window: 1,
            check_support: true,
        }
    }
}

/// `L(pi, pi', s)`: roots `xi_i w_j` over the unramified tops `xi_i` of `pi`
/// and the Satake values `w_j` of `pi'`. Ramified tops contribute nothing.
pub fn l_factor(rep: &GenericRep, pi_prime: &UnramifiedLanglandsRep) -> EulerFactor {
    let piu = compute_piu(rep);
    let roots = piu
        .params
        .iter()
        .flat_map(|xi| pi_prime.satake().iter().map(move |w| xi.mul(w)))
        .collect();
    EulerFactor::new(roots).expect("products of nonzero values")
}

/// `prod_j L(pi, s + s_j)` with `L(pi, s) = prod_i 1/(1 - xi_i q^{-s})` and
/// `w_j = q^{-s_j}`.
pub fn shifted_l_product(rep: &GenericRep, satake_prime: &[Scalar]) -> EulerFactor {
    let tops: Vec<Scalar> = rep
        .segments()
        .iter()
        .filter_map(|s| s.unramified_top().cloned())
        .collect();
    let mut roots = Vec::with_capacity(tops.len() * satake_prime.len());
    for w in satake_prime {
        // L(pi, s + s_j): each root xi_i picks up the factor q^{-s_j}
        roots.extend(tops.iter().map(|xi| w.mul(xi)));
    }
    EulerFactor::new(roots).expect("products of nonzero values")
}

enum LeftFactor {
    Essential(EssentialWhittaker),
    Spherical {
        satake: Vec<Scalar>,
        equal_rank: bool,
        integrality: Integrality,
    },
}

impl LeftFactor {
    fn rank(&self) -> usize {
        match self {
            LeftFactor::Essential(e) => e.n(),
            LeftFactor::Spherical { satake, .. } => satake.len(),
        }
    }

    /// `W(diag(lambda, 1, ..., 1))` for a rank `m` weight.
    fn value(&self, lambda: &TorusWeight) -> Result<Scalar> {
        match self {
            LeftFactor::Essential(e) => e.value(&lambda.extended(e.n() - 1)),
            LeftFactor::Spherical {
                satake,
                equal_rank,
                integrality,
            } => {
                let full = lambda.extended(satake.len());
                if !full.is_dominant() {
                    return Ok(Scalar::zero());
                }
                let last = full.entries().last().copied().unwrap_or(0);
                if last >= 0 {
                    return spherical_value(satake, &full);
                }
                // only reachable at equal rank, where 1_O(a_n) applies
                debug_assert!(*equal_rank);
                match integrality {
                    Integrality::Enforced => Ok(Scalar::zero()),
                    Integrality::Dropped => spherical_value_full_cone(satake, &full),
                }
            }
        }
    }
}

fn left_factor(left: LeftArgument<'_>, m: usize, options: &EngineOptions) -> Result<LeftFactor> {
    match left {
        LeftArgument::Spherical(rep) => {
            let n = rep.rank();
            if m > n {
                return Err(Error::BadRanks { n, m });
            }
            Ok(LeftFactor::Spherical {
                satake: rep.satake().to_vec(),
                equal_rank: m == n,
                integrality: options.integrality,
            })
        }
        LeftArgument::Generic(rep) => {
            let n = rep.n();
            if m > n {
                return Err(Error::BadRanks { n, m });
            }
            if m == n {
                let piu = compute_piu(rep);
                if piu.r != n {
                    return Err(Error::Unsupported(
                        "equal-rank integrals are only defined here for unramified pi".into(),
                    ));
                }
                return left_factor(LeftArgument::Spherical(&piu.as_langlands_rep()), m, options);
            }
            Ok(LeftFactor::Essential(
                EssentialWhittaker::new(rep)?.with_integrality(options.integrality),
            ))
        }
    }
}

/// Dominant rank `m` weights of total `k` with last entry `>= -window`
/// (`window = 0` gives exactly the partitions), listed by last entry.
fn dominant_weights(k: u32, m: usize, window: u32) -> Vec<TorusWeight> {
    if m == 0 {
        return if k == 0 { vec![TorusWeight(Vec::new())] } else { Vec::new() };
    }
    let mut out = Vec::new();
    let (k, mi) = (k as i64, m as i64);
    for last in -(window as i64)..=k.div_euclid(mi) {
        let rest = k - mi * last;
        for mu in partitions_of(rest as u32, m - 1) {
            let mut entries: Vec<i64> = mu.padded(m).iter().map(|&p| p as i64 + last).collect();
            entries[m - 1] = last;
            out.push(TorusWeight(entries));
        }
    }
    out
}

fn coefficient(
    left: &LeftFactor,
    right: &[Scalar],
    k: u32,
    options: &EngineOptions,
) -> Result<Scalar> {
    let n = left.rank();
    let m = right.len();
    let window = match options.integrality {
        Integrality::Enforced => 0,
        Integrality::Dropped => options.negative_window,
    };
    if options.check_support && options.integrality == Integrality::Enforced && m > 0 {
        // the layer with last entry -1: not partitions, must not contribute
        for lambda in dominant_weights(k, m, 1)
            .into_iter()
            .filter(|l| l.entries()[m - 1] == -1)
        {
            if !left.value(&lambda)?.is_zero() {
                return Err(Error::InvariantViolation(format!(
                    "non-partition weight {lambda} contributes at order {k}"
                )));
            }
        }
    }
    let mut total = Scalar::zero();
    for lambda in dominant_weights(k, m, window) {
        let w_left = left.value(&lambda)?;
        if w_left.is_zero() {
            continue;
        }
        let w_right = if lambda.entries().iter().all(|&l| l >= 0) {
            spherical_value(right, &lambda)?
        } else {
            spherical_value_full_cone(right, &lambda)?
        };
        if w_right.is_zero() {
            continue;
        }
        // delta_{B_m}^{-1} and nu^{-(n-m)/2}
        let u_exp = -2 * delta_half_exponent(&lambda) + (n as i64 - m as i64) * k as i64;
        total = total.add(&w_left.mul(&w_right).mul(&Scalar::u_pow(u_exp)));
    }
    Ok(total)
}

/// Truncated expansion of `I(W_left, W'^0_{pi'}, s)` in `t = q^{-s}`.
pub fn rs_series(
    left: LeftArgument<'_>,
    pi_prime: &UnramifiedLanglandsRep,
    order: usize,
) -> Result<TruncatedSeries> {
    rs_series_with(left, pi_prime, order, &EngineOptions::default())
}

pub fn rs_series_with(
    left: LeftArgument<'_>,
    pi_prime: &UnramifiedLanglandsRep,
    order: usize,
    options: &EngineOptions,
) -> Result<TruncatedSeries> {
    let m = pi_prime.rank();
    let factor = left_factor(left, m, options)?;
    let coeffs = (0..=order as u32)
        .into_par_iter()
        .map(|k| coefficient(&factor, pi_prime.satake(), k, options))
        .collect::<Result<Vec<Scalar>>>()?;
    Ok(TruncatedSeries::from_coeffs(coeffs, order))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub order: usize,
    pub lhs: Scalar,
    pub rhs: Scalar,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ReportMetadata {
    pub n: usize,
    pub m: usize,
    pub r: usize,
    /// Human-readable parameter bindings, in a fixed order.
    pub bindings: Vec<(String, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub pass: bool,
    pub degree_checked: usize,
    pub first_mismatch: Option<Mismatch>,
    pub lhs_series: TruncatedSeries,
    pub rhs_series: TruncatedSeries,
    pub metadata: ReportMetadata,
}

impl VerificationReport {
    fn compare(
        lhs: TruncatedSeries,
        rhs: TruncatedSeries,
        order: usize,
        metadata: ReportMetadata,
    ) -> Result<VerificationReport> {
        let first_mismatch = match series_equal(&lhs, &rhs, order)? {
            SeriesComparison::Equal => None,
            SeriesComparison::Mismatch(k) => Some(Mismatch {
                order: k,
                lhs: lhs.coeff(k).clone(),
                rhs: rhs.coeff(k).clone(),
            }),
        };
        Ok(VerificationReport {
            pass: first_mismatch.is_none(),
            degree_checked: order,
            first_mismatch,
            lhs_series: lhs,
            rhs_series: rhs,
            metadata,
        })
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let md = &self.metadata;
        writeln!(f, "verdict: {}", if self.pass { "PASS" } else { "FAIL" })?;
        writeln!(
            f,
            "n = {}, m = {}, r = {}, degree checked = {}",
            md.n, md.m, md.r, self.degree_checked
        )?;
        for (name, value) in &md.bindings {
            writeln!(f, "{name} = {value}")?;
        }
        writeln!(f, "lhs = {}", self.lhs_series)?;
        writeln!(f, "rhs = {}", self.rhs_series)?;
        if let Some(mm) = &self.first_mismatch {
            writeln!(f, "first mismatch at t^{}", mm.order)?;
            writeln!(f, "  lhs coefficient: {}", mm.lhs)?;
            writeln!(f, "  rhs coefficient: {}", mm.rhs)?;
        }
        Ok(())
    }
}

fn list(values: &[Scalar]) -> String {
    let parts: Vec<String> = values.iter().map(Scalar::to_string).collect();
    format!("({})", parts.join(", "))
}

/// Checks `I(W_pi^ess, W_{pi'}^0, s) = L(pi, pi', s)` through `t^order`.
pub fn verify_essential(
    rep: &GenericRep,
    pi_prime: &UnramifiedLanglandsRep,
    order: usize,
) -> Result<VerificationReport> {
    verify_essential_with(rep, pi_prime, order, &EngineOptions::default())
}

pub fn verify_essential_with(
    rep: &GenericRep,
    pi_prime: &UnramifiedLanglandsRep,
    order: usize,
    options: &EngineOptions,
) -> Result<VerificationReport> {
    let (n, m) = (rep.n(), pi_prime.rank());
    if m == 0 {
        return Err(Error::Unsupported("pi' must have rank at least 1".into()));
    }
    if m > n {
        return Err(Error::BadRanks { n, m });
    }
    let piu = compute_piu(rep);
    let lfac = l_factor(rep, pi_prime);
    let product = shifted_l_product(rep, pi_prime.satake());
    if !lfac.same_roots(&product) {
        return Err(Error::InvariantViolation(
            "L-factor roots differ from the product formula".into(),
        ));
    }
    if lfac.degree() != piu.r * m {
        return Err(Error::InvariantViolation(format!(
            "L-factor has {} roots, expected r*m = {}",
            lfac.degree(),
            piu.r * m
        )));
    }
    let lhs = rs_series_with(LeftArgument::Generic(rep), pi_prime, order, options)?;
    let rhs = euler_expand(&lfac, order);
    let metadata = ReportMetadata {
        n,
        m,
        r: piu.r,
        bindings: vec![
            ("q".into(), rep.q().to_string()),
            ("pi".into(), rep.to_string()),
            ("pi_u".into(), list(&piu.params)),
            ("pi'".into(), list(pi_prime.satake())),
            ("L roots".into(), list(lfac.roots())),
        ],
    };
    VerificationReport::compare(lhs, rhs, order, metadata)
}

/// Checks `I(W_pi^0, W_{pi'}^0, s) = prod_{i,j} 1/(1 - x_i y_j t)` for
/// unramified `pi` (rank `n`) and `pi'` (rank `m <= n`).
pub fn cauchy_check(
    pi: &UnramifiedLanglandsRep,
    pi_prime: &UnramifiedLanglandsRep,
    order: usize,
) -> Result<VerificationReport> {
    let (n, m) = (pi.rank(), pi_prime.rank());
    if m > n {
        return Err(Error::BadRanks { n, m });
    }
    let lhs = rs_series(LeftArgument::Spherical(pi), pi_prime, order)?;
    let roots = pi
        .satake()
        .iter()
        .flat_map(|x| pi_prime.satake().iter().map(move |y| x.mul(y)))
        .collect();
    let rhs = euler_expand(&EulerFactor::new(roots)?, order);
    let metadata = ReportMetadata {
        n,
        m,
        r: n,
        bindings: vec![
            ("pi".into(), list(pi.satake())),
            ("pi'".into(), list(pi_prime.satake())),
        ],
    };
    VerificationReport::compare(lhs, rhs, order, metadata)
}
