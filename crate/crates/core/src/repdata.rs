//! Segments, generic representations and their unramified part.
//!
//! A segment `[nu^{-(k-1)} rho, ..., nu^{-1} rho, rho]` is stored by its top
//! `rho` and its length `k`. Unramified tops are characters `chi` recorded by
//! `chi(uniformizer)`, a nonzero rational or a bare indeterminate. Ramified
//! cuspidal tops are opaque: only an id, a degree and an optional integral
//! `nu`-twist are kept, because they never contribute to the L-factors
//! computed here.

use std::collections::HashMap;
use std::fmt;

use num_traits::{One, Signed};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::ringcore::poly::rational_abs_cmp;
use crate::ringcore::scalar::{is_identifier, parse_rational};
use crate::ringcore::{Rational, Scalar};

/// Names that cannot be used as parameter indeterminates.
pub const RESERVED_NAMES: [&str; 3] = ["u", "t", "q"];

/// The residue field cardinality, either a number or left symbolic.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub enum ResidueCardinality {
    #[default]
    Symbolic,
    Numeric(Rational),
}

impl ResidueCardinality {
    pub fn parse(text: &str) -> Result<ResidueCardinality> {
        if text.trim() == "symbolic" {
            return Ok(ResidueCardinality::Symbolic);
        }
        let q = parse_rational(text)?;
        if q <= Rational::one() {
            return Err(Error::Config(format!("q = {q} must exceed 1")));
        }
        Ok(ResidueCardinality::Numeric(q))
    }
}

impl fmt::Display for ResidueCardinality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ResidueCardinality::Symbolic => write!(f, "symbolic"),
            ResidueCardinality::Numeric(q) => write!(f, "{q}"),
        }
    }
}

/// `chi(uniformizer)` for an unramified character `chi` of `F^*`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnramifiedCharacter(Scalar);

impl UnramifiedCharacter {
    pub fn new(value: Scalar) -> Result<UnramifiedCharacter> {
        if value.is_zero() {
            return Err(Error::InvalidCharacter("Satake value must be nonzero".into()));
        }
        if value.as_rational().is_none() {
            match value.as_single_var() {
                Some(v) if RESERVED_NAMES.contains(&&*v.name()) => {
                    return Err(Error::InvalidCharacter(format!(
                        "`{v}` is reserved and cannot name a parameter"
                    )))
                }
                Some(_) => {}
                None => {
                    return Err(Error::InvalidCharacter(format!(
                        "`{value}` is neither a rational nor a single indeterminate"
                    )))
                }
            }
        }
        Ok(UnramifiedCharacter(value))
    }

    pub fn value(&self) -> &Scalar {
        &self.0
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SegmentKind {
    Unramified(UnramifiedCharacter),
    Ramified {
        cuspidal_id: String,
        cuspidal_degree: u32,
        /// The top is `nu^twist rho`; segments over the same `rho` are
        /// compared on a common exponent line.
        twist: i64,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Segment {
    pub kind: SegmentKind,
    pub length: u32,
}

impl Segment {
    pub fn unramified(top: Scalar, length: u32) -> Result<Segment> {
        if length == 0 {
            return Err(Error::BadDegree("segment length must be at least 1".into()));
        }
        Ok(Segment {
            kind: SegmentKind::Unramified(UnramifiedCharacter::new(top)?),
            length,
        })
    }

    pub fn ramified(id: &str, cuspidal_degree: u32, length: u32) -> Result<Segment> {
        Segment::ramified_twisted(id, cuspidal_degree, length, 0)
    }

    pub fn ramified_twisted(id: &str, cuspidal_degree: u32, length: u32, twist: i64) -> Result<Segment> {
        if length == 0 || cuspidal_degree == 0 {
            return Err(Error::BadDegree(
                "segment length and cuspidal degree must be at least 1".into(),
            ));
        }
        Ok(Segment {
            kind: SegmentKind::Ramified {
                cuspidal_id: id.to_string(),
                cuspidal_degree,
                twist,
            },
            length,
        })
    }

    pub fn cuspidal_degree(&self) -> u32 {
        match &self.kind {
            SegmentKind::Unramified(_) => 1,
            SegmentKind::Ramified { cuspidal_degree, .. } => *cuspidal_degree,
        }
    }

    pub fn degree(&self) -> u32 {
        self.length * self.cuspidal_degree()
    }

    pub fn unramified_top(&self) -> Option<&Scalar> {
        match &self.kind {
            SegmentKind::Unramified(chi) => Some(chi.value()),
            SegmentKind::Ramified { .. } => None,
        }
    }

    /// The segment with its `keep` highest elements; the low end is removed.
    fn truncated(&self, keep: u32) -> Segment {
        Segment {
            kind: self.kind.clone(),
            length: keep,
        }
    }
}

impl fmt::Display for Segment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            SegmentKind::Unramified(chi) if self.length == 1 => write!(f, "chi({})", chi.value()),
            SegmentKind::Unramified(chi) => write!(f, "[chi({}); {}]", chi.value(), self.length),
            SegmentKind::Ramified {
                cuspidal_id,
                cuspidal_degree,
                twist,
            } => {
                write!(f, "[{cuspidal_id}:{cuspidal_degree}")?;
                if *twist != 0 {
                    write!(f, " nu^{twist}")?;
                }
                write!(f, "; {}]", self.length)
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Linkage {
    Linked,
    Unlinked,
    /// Tops not comparable with the data at hand (symbolic values or
    /// symbolic q): treated as unlinked.
    UnlinkedGenericPosition,
}

impl Linkage {
    pub fn is_linked(self) -> bool {
        self == Linkage::Linked
    }
}

/// `e` with `q^e = ratio`, if any.
fn q_power_exponent(ratio: &Rational, q: &Rational) -> Option<i64> {
    if !ratio.is_positive() {
        return None;
    }
    let (big, sign) = if *ratio >= Rational::one() {
        (ratio.clone(), 1)
    } else {
        (ratio.recip(), -1)
    };
    let mut power = Rational::one();
    let mut e = 0i64;
    while power < big {
        power *= q;
        e += 1;
    }
    (power == big).then_some(sign * e)
}

/// Exponent interval `[low, high]` on a common `nu`-line, where exponent `p`
/// means `nu^p` times a reference cuspidal.
fn interval(top: i64, length: u32) -> (i64, i64) {
    (top - (length as i64 - 1), top)
}

fn intervals_linked(a: (i64, i64), b: (i64, i64)) -> bool {
    let contains = |x: (i64, i64), y: (i64, i64)| x.0 <= y.0 && y.1 <= x.1;
    let union_is_interval = b.0 <= a.1 + 1 && a.0 <= b.1 + 1;
    union_is_interval && !contains(a, b) && !contains(b, a)
}

/// Zelevinsky's linkage test on a pair of segments.
pub fn validate_unlinked(a: &Segment, b: &Segment, q: &ResidueCardinality) -> Linkage {
    match (&a.kind, &b.kind) {
        (SegmentKind::Unramified(ca), SegmentKind::Unramified(cb)) => {
            let (xa, xb) = (ca.value(), cb.value());
            // chi_b = nu^d chi_a means chi_b(w) = q^{-d} chi_a(w)
            let d = if xa == xb {
                0
            } else {
                let (Some(ra), Some(rb)) = (xa.as_rational(), xb.as_rational()) else {
                    return Linkage::UnlinkedGenericPosition;
                };
                let ResidueCardinality::Numeric(q) = q else {
                    return Linkage::UnlinkedGenericPosition;
                };
                match q_power_exponent(&(rb / ra), q) {
                    Some(e) => -e,
                    None => return Linkage::Unlinked,
                }
            };
            if intervals_linked(interval(0, a.length), interval(d, b.length)) {
                Linkage::Linked
            } else {
                Linkage::Unlinked
            }
        }
        (
            SegmentKind::Ramified {
                cuspidal_id: ia,
                cuspidal_degree: da,
                twist: ta,
            },
            SegmentKind::Ramified {
                cuspidal_id: ib,
                cuspidal_degree: db,
                twist: tb,
            },
        ) if ia == ib && da == db => {
            if intervals_linked(interval(*ta, a.length), interval(*tb, b.length)) {
                Linkage::Linked
            } else {
                Linkage::Unlinked
            }
        }
        _ => Linkage::Unlinked,
    }
}

/// A generic representation: a product of pairwise unlinked segments.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenericRep {
    segments: Vec<Segment>,
    q: ResidueCardinality,
}

impl GenericRep {
    pub fn new(segments: Vec<Segment>, q: ResidueCardinality) -> Result<GenericRep> {
        if segments.is_empty() {
            return Err(Error::BadDegree("a representation needs at least one segment".into()));
        }
        for i in 0..segments.len() {
            for j in i + 1..segments.len() {
                if validate_unlinked(&segments[i], &segments[j], &q).is_linked() {
                    return Err(Error::NotGeneric(i, j));
                }
            }
        }
        Ok(GenericRep { segments, q })
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn q(&self) -> &ResidueCardinality {
        &self.q
    }

    pub fn n(&self) -> usize {
        self.segments.iter().map(|s| s.degree() as usize).sum()
    }

    /// Replaces indeterminate tops by the given values and revalidates.
    pub fn bind(&self, values: &HashMap<String, Rational>) -> Result<GenericRep> {
        let mut segments = Vec::with_capacity(self.segments.len());
        for seg in &self.segments {
            let bound = seg
                .unramified_top()
                .and_then(Scalar::as_single_var)
                .and_then(|v| values.get(&*v.name()).cloned());
            segments.push(match bound {
                Some(value) => Segment::unramified(Scalar::from_rational(value), seg.length)?,
                None => seg.clone(),
            });
        }
        GenericRep::new(segments, self.q.clone())
    }
}

impl fmt::Display for GenericRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.segments.iter().map(Segment::to_string).collect();
        write!(f, "{}", parts.join(" x "))
    }
}

/// `|.|^{s_1} x ... x |.|^{s_m}` given by its Satake values `q^{-s_j}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnramifiedLanglandsRep {
    satake: Vec<Scalar>,
}

impl UnramifiedLanglandsRep {
    pub fn new(satake: Vec<Scalar>) -> Result<UnramifiedLanglandsRep> {
        if let Some(i) = satake.iter().position(Scalar::is_zero) {
            return Err(Error::InvalidCharacter(format!("Satake value {i} is zero")));
        }
        Ok(UnramifiedLanglandsRep { satake })
    }

    pub fn satake(&self) -> &[Scalar] {
        &self.satake
    }

    pub fn rank(&self) -> usize {
        self.satake.len()
    }
}

/// The rank `r` and Satake parameters of the unramified part `pi_u`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnramifiedPart {
    pub r: usize,
    pub params: Vec<Scalar>,
}

impl UnramifiedPart {
    pub fn as_langlands_rep(&self) -> UnramifiedLanglandsRep {
        UnramifiedLanglandsRep {
            satake: self.params.clone(),
        }
    }
}

pub fn compute_piu(rep: &GenericRep) -> UnramifiedPart {
    let tops: Vec<Scalar> = rep
        .segments
        .iter()
        .filter_map(|s| s.unramified_top().cloned())
        .collect();
    UnramifiedPart {
        r: tops.len(),
        params: langlands_order(&tops),
    }
}

/// Orders unramified characters by decreasing real part. Since
/// `|chi(w)| = q^{-Re chi}`, numeric values are sorted by increasing absolute
/// value (stable on ties). Symbolic values keep their positions; the numeric
/// values are sorted among the remaining slots.
pub fn langlands_order(values: &[Scalar]) -> Vec<Scalar> {
    let mut numeric: Vec<(Rational, &Scalar)> = values
        .iter()
        .filter_map(|v| v.as_rational().map(|r| (r, v)))
        .collect();
    numeric.sort_by(|a, b| rational_abs_cmp(&a.0, &b.0));
    let mut sorted = numeric.into_iter().map(|(_, v)| v.clone());
    values
        .iter()
        .map(|v| {
            if v.as_rational().is_some() {
                sorted.next().expect("one sorted value per numeric slot")
            } else {
                v.clone()
            }
        })
        .collect()
}

/// One subquotient `Delta_1^{(a_1)} x ... x Delta_t^{(a_t)}` of a derivative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivativeTerm {
    pub orders: Vec<u32>,
    /// Surviving (nonempty) truncated segments, in input order.
    pub factors: Vec<Segment>,
}

impl DerivativeTerm {
    /// True when every surviving factor is an unramified character of `G_1`
    /// (the empty product counts).
    pub fn is_unramified_characters(&self) -> bool {
        self.factors
            .iter()
            .all(|s| s.length == 1 && s.unramified_top().is_some())
    }

    pub fn character_values(&self) -> Vec<Scalar> {
        self.factors
            .iter()
            .filter_map(|s| s.unramified_top().cloned())
            .collect()
    }
}

impl fmt::Display for DerivativeTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let orders: Vec<String> = self.orders.iter().map(u32::to_string).collect();
        write!(f, "({}): ", orders.join(","))?;
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.factors.iter().map(Segment::to_string).collect();
        write!(f, "{}", parts.join(" x "))
    }
}

/// All order tuples with `sum a_i = order`, each `a_i` a multiple of the
/// cuspidal degree of segment `i` up to its full degree.
fn derivative_terms(rep: &GenericRep, order: usize) -> Vec<DerivativeTerm> {
    fn go(segs: &[Segment], idx: usize, left: u32, orders: &mut Vec<u32>, out: &mut Vec<DerivativeTerm>) {
        if idx == segs.len() {
            if left == 0 {
                let factors = segs
                    .iter()
                    .zip(orders.iter())
                    .filter_map(|(s, &a)| {
                        let keep = s.length - a / s.cuspidal_degree();
                        (keep > 0).then(|| s.truncated(keep))
                    })
                    .collect();
                out.push(DerivativeTerm {
                    orders: orders.clone(),
                    factors,
                });
            }
            return;
        }
        let seg = &segs[idx];
        let m = seg.cuspidal_degree();
        for steps in 0..=seg.length {
            let a = steps * m;
            if a > left {
                break;
            }
            orders.push(a);
            go(segs, idx + 1, left - a, orders, out);
            orders.pop();
        }
    }
    let mut out = Vec::new();
    go(&rep.segments, 0, order as u32, &mut Vec::new(), &mut out);
    out
}

/// Subquotients of the `order`-th Bernstein-Zelevinsky derivative. At order
/// `n - r` the unique all-character subquotient is checked against
/// [`compute_piu`].
pub fn derivative_subquotients(rep: &GenericRep, order: usize) -> Result<Vec<DerivativeTerm>> {
    let n = rep.n();
    if order > n {
        return Err(Error::BadOrder { order, n });
    }
    let terms = derivative_terms(rep, order);
    let piu = compute_piu(rep);
    if order == n - piu.r {
        check_unramified_part(rep, &piu)?;
    }
    Ok(terms)
}

/// Verifies that the first derivative order carrying a product of unramified
/// characters is `n - r`, and that this product is `pi_u`.
pub fn check_unramified_part(rep: &GenericRep, piu: &UnramifiedPart) -> Result<()> {
    let n = rep.n();
    let first = (0..=n).find_map(|j| {
        let hits: Vec<DerivativeTerm> = derivative_terms(rep, j)
            .into_iter()
            .filter(DerivativeTerm::is_unramified_characters)
            .collect();
        (!hits.is_empty()).then_some((j, hits))
    });
    let Some((j, hits)) = first else {
        return Err(Error::InvariantViolation(
            "no derivative is a product of unramified characters".into(),
        ));
    };
    if j != n - piu.r {
        return Err(Error::InvariantViolation(format!(
            "first all-character derivative at order {j}, expected n - r = {}",
            n - piu.r
        )));
    }
    if hits.len() != 1 || !same_multiset(&hits[0].character_values(), &piu.params) {
        return Err(Error::InvariantViolation(format!(
            "derivative of order {j} does not single out pi_u"
        )));
    }
    Ok(())
}

pub fn same_multiset(a: &[Scalar], b: &[Scalar]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let mut rest: Vec<&Scalar> = b.iter().collect();
    a.iter().all(|x| match rest.iter().position(|y| *y == x) {
        Some(i) => {
            rest.swap_remove(i);
            true
        }
        None => false,
    })
}

fn value_text(v: &Value) -> Option<String> {
    match v {
        Value::String(s) => Some(s.clone()),
        Value::Number(n) => Some(n.to_string()),
        _ => None,
    }
}

fn field<'a>(obj: &'a Value, key: &str, ctx: &str) -> Result<&'a Value> {
    obj.get(key)
        .ok_or_else(|| Error::Config(format!("{ctx}: missing field `{key}`")))
}

fn positive_int(obj: &Value, key: &str, ctx: &str) -> Result<u32> {
    let v = field(obj, key, ctx)?;
    let n = v
        .as_u64()
        .ok_or_else(|| Error::Config(format!("{ctx}: `{key}` must be a nonnegative integer")))?;
    if n == 0 {
        return Err(Error::BadDegree(format!("{ctx}: `{key}` must be at least 1")));
    }
    u32::try_from(n).map_err(|_| Error::Config(format!("{ctx}: `{key}` too large")))
}

/// Parses a character value: a rational string, an indeterminate, or the
/// literal `q` when q is numeric.
pub fn parse_character_value(text: &str, q: &ResidueCardinality) -> Result<Scalar> {
    let text = text.trim();
    if text == "q" {
        return match q {
            ResidueCardinality::Numeric(q) => Ok(Scalar::from_rational(q.clone())),
            ResidueCardinality::Symbolic => Err(Error::InvalidCharacter(
                "`q` is reserved; it is only accepted as a value when q is numeric".into(),
            )),
        };
    }
    if is_identifier(text) && RESERVED_NAMES.contains(&text) {
        return Err(Error::InvalidCharacter(format!("`{text}` is reserved")));
    }
    let value = Scalar::parse_atom(text)?;
    if value.is_zero() {
        return Err(Error::InvalidCharacter("Satake value must be nonzero".into()));
    }
    Ok(value)
}

/// Builds a validated representation from the JSON config document
/// `{"q": ..., "segments": [...]}` (`"pi"` is accepted for `"segments"`).
pub fn parse_rep(config: &Value) -> Result<GenericRep> {
    let q = match config.get("q") {
        None => ResidueCardinality::Symbolic,
        Some(v) => ResidueCardinality::parse(
            &value_text(v).ok_or_else(|| Error::Config("`q` must be a string or number".into()))?,
        )?,
    };
    let list = config
        .get("segments")
        .or_else(|| config.get("pi"))
        .ok_or_else(|| Error::Config("missing `segments`".into()))?
        .as_array()
        .ok_or_else(|| Error::Config("`segments` must be a list".into()))?;
    let mut segments = Vec::with_capacity(list.len());
    for (i, item) in list.iter().enumerate() {
        let ctx = format!("segment {i}");
        let kind = field(item, "kind", &ctx)?
            .as_str()
            .ok_or_else(|| Error::Config(format!("{ctx}: `kind` must be a string")))?;
        let length = positive_int(item, "length", &ctx)?;
        let segment = match kind {
            "unramified" => {
                let text = value_text(field(item, "satake", &ctx)?)
                    .ok_or_else(|| Error::Config(format!("{ctx}: `satake` must be a string")))?;
                Segment::unramified(parse_character_value(&text, &q)?, length)?
            }
            "ramified" => {
                let id = field(item, "id", &ctx)?
                    .as_str()
                    .ok_or_else(|| Error::Config(format!("{ctx}: `id` must be a string")))?;
                let degree = positive_int(item, "degree", &ctx)?;
                let twist = match item.get("twist") {
                    None => 0,
                    Some(t) => t
                        .as_i64()
                        .ok_or_else(|| Error::Config(format!("{ctx}: `twist` must be an integer")))?,
                };
                Segment::ramified_twisted(id, degree, length, twist)?
            }
            other => return Err(Error::Config(format!("{ctx}: unknown kind `{other}`"))),
        };
        segments.push(segment);
    }
    let rep = GenericRep::new(segments, q)?;
    if let Some(declared) = config.get("n") {
        let declared = declared
            .as_u64()
            .ok_or_else(|| Error::Config("`n` must be a positive integer".into()))?;
        if declared as usize != rep.n() {
            return Err(Error::BadDegree(format!(
                "declared n = {declared} but segment degrees sum to {}",
                rep.n()
            )));
        }
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    fn s(text: &str) -> Scalar {
        Scalar::parse_atom(text).unwrap()
    }

    fn q3() -> ResidueCardinality {
        ResidueCardinality::parse("3").unwrap()
    }

    #[test]
    fn linked_adjacent_characters() {
        let a = Segment::unramified(s("1"), 1).unwrap();
        let b = Segment::unramified(s("3"), 1).unwrap();
        assert_eq!(validate_unlinked(&a, &b, &q3()), Linkage::Linked);
        assert_eq!(validate_unlinked(&b, &a, &q3()), Linkage::Linked);
    }

    #[test]
    fn equal_segments_are_unlinked() {
        let a = Segment::unramified(s("1"), 2).unwrap();
        assert_eq!(validate_unlinked(&a, &a.clone(), &q3()), Linkage::Unlinked);
    }

    #[test]
    fn symbolic_tops_are_generic_position() {
        let a = Segment::unramified(s("x1"), 2).unwrap();
        let b = Segment::unramified(s("x2"), 3).unwrap();
        assert_eq!(
            validate_unlinked(&a, &b, &ResidueCardinality::Symbolic),
            Linkage::UnlinkedGenericPosition
        );
    }

    #[test]
    fn overlapping_but_not_nested_is_linked() {
        // [1, q] (top 1, length 2) and [q^-1... ] shifted: top q^{-1}, length 2
        // occupy exponents {-1, 0} and {0, 1}
        let a = Segment::unramified(s("1"), 2).unwrap();
        let b = Segment::unramified(s("1/3"), 2).unwrap();
        assert_eq!(validate_unlinked(&a, &b, &q3()), Linkage::Linked);
        // a gap of one exponent: {-1, 0} and {2, 3}
        let c = Segment::unramified(s("1/27"), 2).unwrap();
        assert_eq!(validate_unlinked(&a, &c, &q3()), Linkage::Unlinked);
        // ratio not a power of q
        let d = Segment::unramified(s("1/2"), 2).unwrap();
        assert_eq!(validate_unlinked(&a, &d, &q3()), Linkage::Unlinked);
    }

    #[test]
    fn ramified_segments_use_twists() {
        let a = Segment::ramified_twisted("rho", 2, 1, 0).unwrap();
        let b = Segment::ramified_twisted("rho", 2, 1, 1).unwrap();
        let c = Segment::ramified_twisted("sigma", 2, 1, 1).unwrap();
        assert_eq!(validate_unlinked(&a, &b, &q3()), Linkage::Linked);
        assert_eq!(validate_unlinked(&a, &c, &q3()), Linkage::Unlinked);
        let u = Segment::unramified(s("1"), 1).unwrap();
        assert_eq!(validate_unlinked(&a, &u, &q3()), Linkage::Unlinked);
    }

    #[test]
    fn parse_examples() {
        let rep = parse_rep(&json!({"q": "symbolic", "segments": [
            {"kind": "unramified", "satake": "1/2", "length": 2}
        ]}))
        .unwrap();
        assert_eq!(rep.n(), 2);

        let err = parse_rep(&json!({"q": "3", "segments": [
            {"kind": "unramified", "satake": "1", "length": 1},
            {"kind": "unramified", "satake": "q", "length": 1}
        ]}));
        assert_eq!(err, Err(Error::NotGeneric(0, 1)));

        let rep = parse_rep(&json!({"q": "3", "segments": [
            {"kind": "unramified", "satake": "1/2", "length": 2},
            {"kind": "ramified", "id": "rho1", "degree": 2, "length": 1},
            {"kind": "unramified", "satake": "3", "length": 1}
        ]}))
        .unwrap();
        assert_eq!(rep.n(), 5);
    }

    #[test]
    fn parse_errors() {
        let zero = parse_rep(&json!({"segments": [
            {"kind": "unramified", "satake": "0", "length": 1}
        ]}));
        assert!(matches!(zero, Err(Error::InvalidCharacter(_))));
        let reserved = parse_rep(&json!({"segments": [
            {"kind": "unramified", "satake": "t", "length": 1}
        ]}));
        assert!(matches!(reserved, Err(Error::InvalidCharacter(_))));
        let mismatch = parse_rep(&json!({"n": 4, "segments": [
            {"kind": "unramified", "satake": "x1", "length": 2}
        ]}));
        assert!(matches!(mismatch, Err(Error::BadDegree(_))));
        let empty_len = parse_rep(&json!({"segments": [
            {"kind": "unramified", "satake": "x1", "length": 0}
        ]}));
        assert!(matches!(empty_len, Err(Error::BadDegree(_))));
    }

    #[test]
    fn piu_examples() {
        let rep = GenericRep::new(
            vec![
                Segment::unramified(s("1/2"), 2).unwrap(),
                Segment::ramified("rho1", 2, 1).unwrap(),
                Segment::unramified(s("3"), 1).unwrap(),
            ],
            q3(),
        )
        .unwrap();
        let piu = compute_piu(&rep);
        assert_eq!(piu.r, 2);
        assert_eq!(piu.params, vec![s("1/2"), s("3")]);

        let rep = GenericRep::new(vec![Segment::ramified("rho1", 2, 1).unwrap()], q3()).unwrap();
        assert_eq!(compute_piu(&rep), UnramifiedPart { r: 0, params: vec![] });

        let rep = GenericRep::new(vec![Segment::unramified(s("x1"), 1).unwrap()], q3()).unwrap();
        assert_eq!(compute_piu(&rep).params, vec![s("x1")]);
    }

    #[test]
    fn langlands_order_examples() {
        assert_eq!(langlands_order(&[s("3"), s("1/2")]), vec![s("1/2"), s("3")]);
        assert_eq!(langlands_order(&[s("x1"), s("x2")]), vec![s("x1"), s("x2")]);
        assert_eq!(langlands_order(&[s("1"), s("1")]), vec![s("1"), s("1")]);
        assert_eq!(langlands_order(&[s("-1/3"), s("1/4")]), vec![s("1/4"), s("-1/3")]);
        assert_eq!(
            langlands_order(&[s("5"), s("x1"), s("2")]),
            vec![s("2"), s("x1"), s("5")]
        );
    }

    #[test]
    fn derivative_examples() {
        let xi = s("x1");
        let rep = GenericRep::new(vec![Segment::unramified(xi.clone(), 2).unwrap()], q3()).unwrap();
        let terms = derivative_subquotients(&rep, 1).unwrap();
        assert_eq!(terms.len(), 1);
        assert!(terms[0].is_unramified_characters());
        assert_eq!(terms[0].character_values(), vec![xi.clone()]);

        let zero = derivative_subquotients(&rep, 0).unwrap();
        assert_eq!(zero.len(), 1);
        assert_eq!(zero[0].factors, rep.segments().to_vec());

        assert_eq!(
            derivative_subquotients(&rep, 3),
            Err(Error::BadOrder { order: 3, n: 2 })
        );

        let (x1, x2) = (s("x1"), s("x2"));
        let rep = GenericRep::new(
            vec![
                Segment::unramified(x1.clone(), 2).unwrap(),
                Segment::unramified(x2.clone(), 1).unwrap(),
            ],
            ResidueCardinality::Symbolic,
        )
        .unwrap();
        let terms = derivative_subquotients(&rep, 1).unwrap();
        assert_eq!(terms.len(), 2);
        let chars: Vec<&DerivativeTerm> =
            terms.iter().filter(|t| t.is_unramified_characters()).collect();
        assert_eq!(chars.len(), 1);
        assert_eq!(chars[0].orders, vec![1, 0]);
        assert!(same_multiset(&chars[0].character_values(), &[x1.clone(), x2]));
        let other = terms.iter().find(|t| t.orders == vec![0, 1]).unwrap();
        assert_eq!(other.factors, vec![Segment::unramified(x1, 2).unwrap()]);
    }

    #[test]
    fn ramified_derivatives_step_by_degree() {
        let rep = GenericRep::new(vec![Segment::ramified("rho", 2, 2).unwrap()], q3()).unwrap();
        assert!(derivative_subquotients(&rep, 1).unwrap().is_empty());
        assert_eq!(derivative_subquotients(&rep, 2).unwrap().len(), 1);
        let top = derivative_subquotients(&rep, 4).unwrap();
        assert!(top[0].factors.is_empty());
        assert!(top[0].is_unramified_characters());
    }
}
