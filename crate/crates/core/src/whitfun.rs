//! Torus values of Whittaker functions.
//!
//! A torus weight `lambda` stands for `diag(w^{lambda_1}, ..., w^{lambda_m})`
//! with `w` a uniformizer. The modulus character is
//! `delta_B(a) = prod_{i<j} |a_i / a_j|`, so `delta_B^{1/2}(w^lambda)` is the
//! monomial `u^{-sum_i lambda_i (m + 1 - 2i)}` with `u^2 = q`.

use std::fmt;

use crate::error::{Error, Result};
use crate::repdata::{compute_piu, GenericRep};
use crate::ringcore::Scalar;
use crate::symfunc::{schur_with, Partition, SchurAlgorithm};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct TorusWeight(pub Vec<i64>);

impl TorusWeight {
    pub fn zero(rank: usize) -> TorusWeight {
        TorusWeight(vec![0; rank])
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn is_dominant(&self) -> bool {
        self.0.windows(2).all(|w| w[0] >= w[1])
    }

    pub fn total(&self) -> i64 {
        self.0.iter().sum()
    }

    /// The weight padded with zeros to `rank` entries.
    pub fn extended(&self, rank: usize) -> TorusWeight {
        let mut e = self.0.clone();
        e.resize(rank, 0);
        TorusWeight(e)
    }

    pub fn parse(text: &str) -> Result<TorusWeight> {
        if text.trim().is_empty() {
            return Ok(TorusWeight(Vec::new()));
        }
        text.split(',')
            .map(|p| {
                p.trim()
                    .parse::<i64>()
                    .map_err(|_| Error::Parse(format!("`{p}` is not an integer")))
            })
            .collect::<Result<Vec<_>>>()
            .map(TorusWeight)
    }
}

impl From<Vec<i64>> for TorusWeight {
    fn from(v: Vec<i64>) -> Self {
        TorusWeight(v)
    }
}

impl fmt::Display for TorusWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(i64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Exponent of `u` in `delta_{B_m}^{1/2}(w^lambda)`.
pub fn delta_half_exponent(lambda: &TorusWeight) -> i64 {
    let m = lambda.rank() as i64;
    -lambda
        .0
        .iter()
        .enumerate()
        .map(|(i, &l)| l * (m + 1 - 2 * (i as i64 + 1)))
        .sum::<i64>()
}

pub fn delta_half(lambda: &TorusWeight, rank: usize) -> Result<Scalar> {
    if lambda.rank() != rank {
        return Err(Error::BadRank {
            expected: rank,
            got: lambda.rank(),
        });
    }
    Ok(Scalar::u_pow(delta_half_exponent(lambda)))
}

fn as_partition(lambda: &TorusWeight) -> Partition {
    Partition::new(lambda.0.iter().map(|&l| l as u32).collect()).expect("dominant and nonnegative")
}

/// The normalized spherical Whittaker function `W^0` of the unramified
/// representation with the given Satake values, at `w^lambda`:
/// `delta^{1/2}(w^lambda) s_lambda(satake)` on the dominant cone, 0 off it.
/// Only weights with nonnegative entries are accepted.
pub fn spherical_value(satake: &[Scalar], lambda: &TorusWeight) -> Result<Scalar> {
    spherical_value_with(satake, lambda, SchurAlgorithm::JacobiTrudi)
}

pub fn spherical_value_with(
    satake: &[Scalar],
    lambda: &TorusWeight,
    algorithm: SchurAlgorithm,
) -> Result<Scalar> {
    if lambda.rank() != satake.len() {
        return Err(Error::BadRank {
            expected: satake.len(),
            got: lambda.rank(),
        });
    }
    if !lambda.is_dominant() {
        return Ok(Scalar::zero());
    }
    if lambda.0.iter().any(|&l| l < 0) {
        return Err(Error::UnsupportedWeight(lambda.0.clone()));
    }
    let schur = schur_with(&as_partition(lambda), satake, algorithm)?.value;
    Ok(Scalar::u_pow(delta_half_exponent(lambda)).mul(&schur))
}

/// `W^0` on the whole dominant cone, negative entries included, using
/// `s_lambda = (prod z_i)^{lambda_m} s_{lambda - lambda_m}`. Needed only when
/// an integrality indicator is switched off.
pub fn spherical_value_full_cone(satake: &[Scalar], lambda: &TorusWeight) -> Result<Scalar> {
    if lambda.rank() != satake.len() {
        return Err(Error::BadRank {
            expected: satake.len(),
            got: lambda.rank(),
        });
    }
    if !lambda.is_dominant() {
        return Ok(Scalar::zero());
    }
    let shift = lambda.0.last().copied().unwrap_or(0);
    if shift >= 0 {
        return spherical_value(satake, lambda);
    }
    let lifted = TorusWeight(lambda.0.iter().map(|&l| l - shift).collect());
    let det: Scalar = satake.iter().cloned().product();
    let schur = schur_with(&as_partition(&lifted), satake, SchurAlgorithm::JacobiTrudi)?.value;
    Ok(Scalar::u_pow(delta_half_exponent(lambda))
        .mul(&det.pow(shift)?)
        .mul(&schur))
}

/// Simple-root coordinates to diagonal exponents: `a_i = sum_{j >= i} z_j`.
pub fn beta_to_diag(z_exponents: &[i64]) -> TorusWeight {
    let mut acc = 0;
    let mut out: Vec<i64> = z_exponents
        .iter()
        .rev()
        .map(|&z| {
            acc += z;
            acc
        })
        .collect();
    out.reverse();
    TorusWeight(out)
}

/// Whether the `1_O(a_r)` factor of the essential formula is applied.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Integrality {
    #[default]
    Enforced,
    /// Test hook for negative controls: the factor is treated as 1.
    Dropped,
}

/// The essential Whittaker function of a generic representation, restricted
/// to `diag(a, 1)` with `a` in the rank `n - 1` torus.
#[derive(Clone, Debug)]
pub struct EssentialWhittaker {
    n: usize,
    r: usize,
    params: Vec<Scalar>,
    integrality: Integrality,
}

impl EssentialWhittaker {
    pub fn new(rep: &GenericRep) -> Result<EssentialWhittaker> {
        let n = rep.n();
        if n < 2 {
            return Err(Error::Unsupported(
                "the essential function on the rank n-1 torus needs n >= 2".into(),
            ));
        }
        let piu = compute_piu(rep);
        Ok(EssentialWhittaker {
            n,
            r: piu.r,
            params: piu.params,
            integrality: Integrality::Enforced,
        })
    }

    pub fn with_integrality(mut self, integrality: Integrality) -> EssentialWhittaker {
        self.integrality = integrality;
        self
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn params(&self) -> &[Scalar] {
        &self.params
    }

    /// Value at `diag(w^{lambda_1}, ..., w^{lambda_{n-1}}, 1)`. Any integer
    /// weight is accepted; the indicator factors decide the support.
    pub fn value(&self, lambda: &TorusWeight) -> Result<Scalar> {
        let (n, r) = (self.n, self.r);
        if lambda.rank() != n - 1 {
            return Err(Error::BadRank {
                expected: n - 1,
                got: lambda.rank(),
            });
        }
        if r == n {
            // the trailing 0 keeps every supported weight nonnegative
            return spherical_value(&self.params, &lambda.extended(n));
        }
        let l = lambda.entries();
        if l[r..].iter().any(|&x| x != 0) {
            return Ok(Scalar::zero());
        }
        if r == 0 {
            return Ok(Scalar::one());
        }
        let head = TorusWeight(l[..r].to_vec());
        if !head.is_dominant() {
            return Ok(Scalar::zero());
        }
        let spherical = if l[r - 1] >= 0 {
            spherical_value(&self.params, &head)?
        } else {
            match self.integrality {
                Integrality::Enforced => return Ok(Scalar::zero()),
                Integrality::Dropped => spherical_value_full_cone(&self.params, &head)?,
            }
        };
        let nu_power = Scalar::u_pow(-((n - r) as i64) * head.total());
        Ok(spherical.mul(&nu_power))
    }

    /// The same function evaluated from its simple-root description:
    /// `z_j = w^{e_j}` for `j < n`, with `(z_1, ..., z_r)` read as an element
    /// of the rank `r` torus.
    pub fn value_beta(&self, z_exponents: &[i64]) -> Result<Scalar> {
        let (n, r) = (self.n, self.r);
        if z_exponents.len() != n - 1 {
            return Err(Error::BadRank {
                expected: n - 1,
                got: z_exponents.len(),
            });
        }
        if r == n {
            let mut z = z_exponents.to_vec();
            z.push(0);
            let diag = beta_to_diag(&z);
            if !diag.is_dominant() {
                return Ok(Scalar::zero());
            }
            return spherical_value_full_cone(&self.params, &diag);
        }
        // prod_{j > r} 1_{O^*}(z_j)
        if z_exponents[r..].iter().any(|&e| e != 0) {
            return Ok(Scalar::zero());
        }
        if r == 0 {
            return Ok(Scalar::one());
        }
        // 1_O(z_r)
        if z_exponents[r - 1] < 0 && self.integrality == Integrality::Enforced {
            return Ok(Scalar::zero());
        }
        let inner = beta_to_diag(&z_exponents[..r]);
        let w0 = spherical_value_full_cone(&self.params, &inner)?;
        // nu(z_1, ..., z_r) = |det| = q^{-sum_i i e_i}
        let det_exponent: i64 = z_exponents[..r]
            .iter()
            .enumerate()
            .map(|(i, &e)| (i as i64 + 1) * e)
            .sum();
        Ok(w0.mul(&Scalar::u_pow(-((n - r) as i64) * det_exponent)))
    }
}

pub fn essential_value(rep: &GenericRep, lambda: &TorusWeight) -> Result<Scalar> {
    EssentialWhittaker::new(rep)?.value(lambda)
}

pub fn essential_value_beta(rep: &GenericRep, z_exponents: &[i64]) -> Result<Scalar> {
    EssentialWhittaker::new(rep)?.value_beta(z_exponents)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::repdata::{ResidueCardinality, Segment};

    fn v(name: &str) -> Scalar {
        Scalar::var(name)
    }

    fn w(entries: &[i64]) -> TorusWeight {
        TorusWeight(entries.to_vec())
    }

    #[test]
    fn delta_half_examples() {
        assert!(delta_half(&w(&[0, 0, 0]), 3).unwrap().is_one());
        assert_eq!(delta_half(&w(&[1, 0]), 2).unwrap(), Scalar::u_pow(-1));
        assert_eq!(delta_half(&w(&[2, 1, 0]), 3).unwrap(), Scalar::u_pow(-4));
        assert!(matches!(delta_half(&w(&[1]), 2), Err(Error::BadRank { .. })));
    }

    #[test]
    fn spherical_examples() {
        let z = vec![v("z1"), v("z2")];
        assert!(spherical_value(&z, &w(&[0, 0])).unwrap().is_one());
        assert_eq!(
            spherical_value(&z, &w(&[1, 0])).unwrap(),
            Scalar::u_pow(-1).mul(&v("z1").add(&v("z2")))
        );
        assert!(spherical_value(&z, &w(&[0, 1])).unwrap().is_zero());
        assert_eq!(
            spherical_value(&z, &w(&[0, -1])),
            Err(Error::UnsupportedWeight(vec![0, -1]))
        );
    }

    #[test]
    fn full_cone_matches_central_shift() {
        // W(w^{(1,-1)}) with satake (z1, z2): delta^{1/2} = u^{-2}, s = z1/z2 + 1 + z2/z1
        let z = vec![v("z1"), v("z2")];
        let got = spherical_value_full_cone(&z, &w(&[1, -1])).unwrap();
        let s = v("z1")
            .div(&v("z2"))
            .unwrap()
            .add(&Scalar::one())
            .add(&v("z2").div(&v("z1")).unwrap());
        assert_eq!(got, Scalar::u_pow(-2).mul(&s));
    }

    #[test]
    fn beta_examples() {
        assert_eq!(beta_to_diag(&[0, 0, 0]), w(&[0, 0, 0]));
        assert_eq!(beta_to_diag(&[1, 0]), w(&[1, 0]));
        assert_eq!(beta_to_diag(&[1, 1, 1]), w(&[3, 2, 1]));
    }

    fn rep(segments: Vec<Segment>) -> GenericRep {
        GenericRep::new(segments, ResidueCardinality::Symbolic).unwrap()
    }

    #[test]
    fn essential_r_zero() {
        let pi = rep(vec![Segment::ramified("rho", 1, 2).unwrap(), Segment::ramified("sigma", 1, 1).unwrap()]);
        assert!(essential_value(&pi, &w(&[1, 0])).unwrap().is_zero());
        assert!(essential_value(&pi, &w(&[0, 0])).unwrap().is_one());
        assert!(essential_value(&pi, &w(&[0, -1])).unwrap().is_zero());
    }

    #[test]
    fn essential_steinberg_type() {
        let xi = v("xi");
        let pi = rep(vec![Segment::unramified(xi.clone(), 2).unwrap()]);
        for l in -3..=4i64 {
            let got = essential_value(&pi, &w(&[l])).unwrap();
            let expected = if l >= 0 {
                xi.pow(l).unwrap().mul(&Scalar::u_pow(-l))
            } else {
                Scalar::zero()
            };
            assert_eq!(got, expected, "lambda = {l}");
        }
    }

    #[test]
    fn essential_at_identity_is_one() {
        let reps = vec![
            rep(vec![Segment::unramified(v("x1"), 1).unwrap(), Segment::ramified("rho", 2, 1).unwrap()]),
            rep(vec![Segment::unramified(v("x1"), 1).unwrap(), Segment::unramified(v("x2"), 1).unwrap()]),
            rep(vec![Segment::ramified("rho", 3, 1).unwrap()]),
        ];
        for pi in reps {
            let lambda = TorusWeight::zero(pi.n() - 1);
            assert!(essential_value(&pi, &lambda).unwrap().is_one());
        }
    }

    #[test]
    fn essential_rank_mismatch() {
        let pi = rep(vec![Segment::unramified(v("x1"), 3).unwrap()]);
        assert_eq!(
            essential_value(&pi, &w(&[1])),
            Err(Error::BadRank { expected: 2, got: 1 })
        );
    }

    #[test]
    fn unramified_rep_delegates_to_spherical() {
        let z = vec![v("z1"), v("z2"), v("z3")];
        let pi = rep(z.iter().map(|x| Segment::unramified(x.clone(), 1).unwrap()).collect());
        for lambda in [[0, 0], [1, 0], [2, 1], [3, 3], [0, 2]] {
            let got = essential_value(&pi, &w(&lambda)).unwrap();
            let expected = spherical_value(&z, &w(&lambda).extended(3)).unwrap();
            assert_eq!(got, expected);
        }
    }

    #[test]
    fn dropped_indicator_changes_negative_support() {
        let pi = rep(vec![
            Segment::unramified(v("x1"), 1).unwrap(),
            Segment::unramified(v("x2"), 1).unwrap(),
            Segment::ramified("rho", 1, 1).unwrap(),
        ]);
        let ess = EssentialWhittaker::new(&pi).unwrap();
        assert!(ess.value(&w(&[1, -1])).unwrap().is_zero());
        let dropped = ess.clone().with_integrality(Integrality::Dropped);
        assert!(!dropped.value(&w(&[1, -1])).unwrap().is_zero());
        assert!(!dropped.value_beta(&[2, -1]).unwrap().is_zero());
    }
}
