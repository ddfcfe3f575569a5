//! Sparse multivariate Laurent polynomials over the rationals.

use std::cmp::Ordering;
use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use smallvec::SmallVec;

use super::var::{canonical_cmp, Var};

pub type Rational = BigRational;

/// A Laurent monomial: `(variable, exponent)` pairs sorted by variable id,
/// zero exponents never stored.
#[derive(Clone, PartialEq, Eq, Hash, Default, Debug)]
pub struct Monomial(SmallVec<[(Var, i32); 4]>);

impl Monomial {
    pub fn one() -> Monomial {
        Monomial(SmallVec::new())
    }

    pub fn var(v: Var, exp: i32) -> Monomial {
        let mut m = Monomial::one();
        if exp != 0 {
            m.0.push((v, exp));
        }
        m
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (Var, i32)>) -> Monomial {
        let mut m = Monomial::one();
        for (v, e) in pairs {
            m = m.mul(&Monomial::var(v, e));
        }
        m
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn pairs(&self) -> &[(Var, i32)] {
        &self.0
    }

    pub fn exponent(&self, v: Var) -> i32 {
        self.0
            .iter()
            .find(|(w, _)| *w == v)
            .map(|(_, e)| *e)
            .unwrap_or(0)
    }

    pub fn total_degree(&self) -> i64 {
        self.0.iter().map(|(_, e)| *e as i64).sum()
    }

    fn merge(&self, other: &Monomial, sign: i32) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = SmallVec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
                out.push(a[i]);
                i += 1;
            } else if i == a.len() || b[j].0 < a[i].0 {
                out.push((b[j].0, sign * b[j].1));
                j += 1;
            } else {
                let e = a[i].1 + sign * b[j].1;
                if e != 0 {
                    out.push((a[i].0, e));
                }
                i += 1;
                j += 1;
            }
        }
        Monomial(out)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        self.merge(other, 1)
    }

    pub fn div(&self, other: &Monomial) -> Monomial {
        self.merge(other, -1)
    }

    pub fn inv(&self) -> Monomial {
        Monomial(self.0.iter().map(|&(v, e)| (v, -e)).collect())
    }

    pub fn pow(&self, k: i32) -> Monomial {
        if k == 0 {
            return Monomial::one();
        }
        Monomial(self.0.iter().map(|&(v, e)| (v, e * k)).collect())
    }

    pub fn has_negative(&self) -> bool {
        self.0.iter().any(|(_, e)| *e < 0)
    }

    /// Componentwise minimum, counting absent variables as exponent zero.
    pub fn meet(&self, other: &Monomial) -> Monomial {
        let vars = self.0.iter().chain(other.0.iter()).map(|(v, _)| *v);
        let mut pairs: Vec<(Var, i32)> = vars
            .map(|v| (v, self.exponent(v).min(other.exponent(v))))
            .filter(|(_, e)| *e != 0)
            .collect();
        pairs.sort();
        pairs.dedup();
        Monomial(pairs.into_iter().collect())
    }

    /// Order used for printing: total degree, then the exponent vector read in
    /// canonical variable order, larger exponents first.
    pub fn print_cmp(&self, other: &Monomial) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| {
                let mut vars: Vec<Var> = self
                    .0
                    .iter()
                    .chain(other.0.iter())
                    .map(|(v, _)| *v)
                    .collect();
                vars.sort_by(|a, b| canonical_cmp(*a, *b));
                vars.dedup();
                for v in vars {
                    let c = other.exponent(v).cmp(&self.exponent(v));
                    if c != Ordering::Equal {
                        return c;
                    }
                }
                Ordering::Equal
            })
    }
}

/// Lexicographic monomial order, smaller variable id most significant.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b) = (&self.0, &other.0);
        let (mut i, mut j) = (0, 0);
        loop {
            match (a.get(i), b.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some(&(_, ea)), None) => return ea.cmp(&0),
                (None, Some(&(_, eb))) => return 0.cmp(&eb),
                (Some(&(va, ea)), Some(&(vb, eb))) => {
                    if va == vb {
                        if ea != eb {
                            return ea.cmp(&eb);
                        }
                        i += 1;
                        j += 1;
                    } else if va < vb {
                        return ea.cmp(&0);
                    } else {
                        return 0.cmp(&eb);
                    }
                }
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EvalError {
    Unbound(Var),
    Pole,
}

/// Laurent polynomial; terms sorted ascending by the lexicographic monomial
/// order with no zero coefficients.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Poly {
    terms: Vec<(Monomial, Rational)>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly { terms: Vec::new() }
    }

    pub fn one() -> Poly {
        Poly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Poly {
        Poly::term(Monomial::one(), c)
    }

    pub fn term(m: Monomial, c: Rational) -> Poly {
        if c.is_zero() {
            Poly::zero()
        } else {
            Poly { terms: vec![(m, c)] }
        }
    }

    pub fn var(v: Var) -> Poly {
        Poly::term(Monomial::var(v, 1), Rational::one())
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Poly {
        let mut acc: HashMap<Monomial, Rational> = HashMap::new();
        for (m, c) in terms {
            *acc.entry(m).or_insert_with(Rational::zero) += c;
        }
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| a.0.cmp(&b.0));
        Poly { terms }
    }

    pub fn terms(&self) -> &[(Monomial, Rational)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.as_slice() {
            [] => Some(Rational::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.as_constant().is_some()
    }

    pub fn as_monomial(&self) -> Option<(&Monomial, &Rational)> {
        match self.terms.as_slice() {
            [(m, c)] => Some((m, c)),
            _ => None,
        }
    }

    /// The largest term in the lexicographic monomial order.
    pub fn leading(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.last().map(|(m, c)| (m, c))
    }

    pub fn vars(&self) -> Vec<Var> {
        let mut vs: Vec<Var> = self
            .terms
            .iter()
            .flat_map(|(m, _)| m.pairs().iter().map(|(v, _)| *v))
            .collect();
        vs.sort();
        vs.dedup();
        vs
    }

    pub fn neg(&self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, k: &Rational) -> Poly {
        if k.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect(),
        }
    }

    pub fn mul_monomial(&self, mono: &Monomial) -> Poly {
        if mono.is_one() {
            return self.clone();
        }
        // multiplication by a monomial preserves a monomial order
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.mul(mono), c.clone()))
                .collect(),
        }
    }

    pub fn mul_term(&self, mono: &Monomial, k: &Rational) -> Poly {
        if k.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.mul(mono), c * k))
                .collect(),
        }
    }

    fn merge_with(&self, other: &Poly, negate: bool) -> Poly {
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            let ord = if i == a.len() {
                Ordering::Greater
            } else if j == b.len() {
                Ordering::Less
            } else {
                a[i].0.cmp(&b[j].0)
            };
            match ord {
                Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    let c = if negate { -&b[j].1 } else { b[j].1.clone() };
                    out.push((b[j].0.clone(), c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Poly { terms: out }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        self.merge_with(other, false)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.merge_with(other, true)
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        if let Some((m, c)) = other.as_monomial() {
            return self.mul_term(m, c);
        }
        if let Some((m, c)) = self.as_monomial() {
            return other.mul_term(m, c);
        }
        let mut acc: HashMap<Monomial, Rational> =
            HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let c = ca * cb;
                acc.entry(ma.mul(mb))
                    .and_modify(|x| *x += &c)
                    .or_insert(c);
            }
        }
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| a.0.cmp(&b.0));
        Poly { terms }
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut out = Poly::one();
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                out = out.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        out
    }

    /// Per-variable minimum exponent over all terms (absent counts as 0).
    pub fn min_exponents(&self) -> Monomial {
        let mut iter = self.terms.iter();
        let Some((first, _)) = iter.next() else {
            return Monomial::one();
        };
        let mut meet = first.clone();
        for (m, _) in iter {
            meet = meet.meet(m);
        }
        meet
    }

    pub fn degree_in(&self, v: Var) -> i32 {
        self.terms.iter().map(|(m, _)| m.exponent(v)).max().unwrap_or(0)
    }

    pub fn is_ordinary(&self) -> bool {
        self.terms.iter().all(|(m, _)| !m.has_negative())
    }

    /// Splits into `monomial * rest` where `rest` has no monomial factor.
    pub fn split_monomial_factor(&self) -> (Monomial, Poly) {
        let shift = self.min_exponents();
        (shift.clone(), self.mul_monomial(&shift.inv()))
    }

    /// Coefficients with respect to `v`, index = exponent. Requires
    /// nonnegative exponents of `v`.
    fn to_univariate(&self, v: Var) -> Vec<Poly> {
        let deg = self.degree_in(v).max(0) as usize;
        let mut buckets: Vec<Vec<(Monomial, Rational)>> = vec![Vec::new(); deg + 1];
        for (m, c) in &self.terms {
            let e = m.exponent(v);
            debug_assert!(e >= 0);
            buckets[e as usize].push((m.div(&Monomial::var(v, e)), c.clone()));
        }
        buckets.into_iter().map(Poly::from_terms).collect()
    }

    fn from_univariate(coeffs: &[Poly], v: Var) -> Poly {
        let mut out = Poly::zero();
        for (i, c) in coeffs.iter().enumerate() {
            out = out.add(&c.mul_monomial(&Monomial::var(v, i as i32)));
        }
        out
    }

    /// Exact quotient `self / divisor` in the Laurent ring, or `None` if the
    /// divisor does not divide.
    pub fn div_exact(&self, divisor: &Poly) -> Option<Poly> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Poly::zero());
        }
        if let Some((m, c)) = divisor.as_monomial() {
            return Some(self.mul_term(&m.inv(), &c.recip()));
        }
        let (sa, a0) = self.split_monomial_factor();
        let (sd, d0) = divisor.split_monomial_factor();
        let q = a0.div_exact_ordinary(&d0)?;
        Some(q.mul_monomial(&sa.div(&sd)))
    }

    /// Exact division of ordinary polynomials by repeated leading-term
    /// cancellation.
    fn div_exact_ordinary(&self, divisor: &Poly) -> Option<Poly> {
        let (lm, lc) = divisor.leading().expect("nonzero divisor");
        let (lm, lc) = (lm.clone(), lc.clone());
        let mut rem = self.clone();
        let mut quotient = Vec::new();
        while let Some((rm, rc)) = rem.leading() {
            let m = rm.div(&lm);
            if m.has_negative() {
                return None;
            }
            let c = rc / &lc;
            rem = rem.sub(&divisor.mul_term(&m, &c));
            quotient.push((m, c));
        }
        quotient.reverse();
        Some(Poly { terms: quotient })
    }

    /// Coefficient of the first term in printing order.
    pub fn canonical_lead_coeff(&self) -> Option<&Rational> {
        self.terms
            .iter()
            .min_by(|a, b| a.0.print_cmp(&b.0))
            .map(|(_, c)| c)
    }

    /// Rescales so that [`Poly::canonical_lead_coeff`] is 1.
    pub fn normalize_unit(&self) -> Poly {
        match self.canonical_lead_coeff() {
            Some(c) if !c.is_one() => self.scale(&c.recip()),
            _ => self.clone(),
        }
    }

    /// Terms sorted in printing order.
    pub fn print_terms(&self) -> Vec<&(Monomial, Rational)> {
        let mut ts: Vec<_> = self.terms.iter().collect();
        ts.sort_by(|a, b| a.0.print_cmp(&b.0));
        ts
    }

    pub fn eval<F>(&self, lookup: &F) -> Result<Rational, EvalError>
    where
        F: Fn(Var) -> Option<Rational>,
    {
        let mut cache: HashMap<Var, Rational> = HashMap::new();
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut value = c.clone();
            for &(v, e) in m.pairs() {
                let x = match cache.get(&v) {
                    Some(x) => x.clone(),
                    None => {
                        let x = lookup(v).ok_or(EvalError::Unbound(v))?;
                        cache.insert(v, x.clone());
                        x
                    }
                };
                if x.is_zero() {
                    if e < 0 {
                        return Err(EvalError::Pole);
                    }
                    value = Rational::zero();
                    continue;
                }
                value *= pow_rational(&x, e);
            }
            total += value;
        }
        Ok(total)
    }

    pub fn substitute_var(&self, v: Var, value: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let e = m.exponent(v);
            let rest = Poly::term(m.div(&Monomial::var(v, e)), c.clone());
            let factor = if e >= 0 {
                value.pow(e as u32)
            } else {
                // only monomial values can be inverted inside the Laurent ring
                let (vm, vc) = value.as_monomial().expect("monomial substitution");
                Poly::term(vm.pow(e), pow_rational(vc, e))
            };
            out = out.add(&rest.mul(&factor));
        }
        out
    }
}

pub fn pow_rational(x: &Rational, e: i32) -> Rational {
    let base = if e < 0 { x.recip() } else { x.clone() };
    num_traits::pow(base, e.unsigned_abs() as usize)
}

/// Greatest common divisor of two polynomials, normalized so that its
/// canonical leading coefficient is 1. Monomial factors are handled as in the
/// ordinary polynomial ring (minimum exponents), so the inputs may be Laurent.
pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return b.normalize_unit();
    }
    if b.is_zero() {
        return a.normalize_unit();
    }
    let (ma, a0) = a.split_monomial_factor();
    let (mb, b0) = b.split_monomial_factor();
    let shift = ma.meet(&mb);
    gcd_ordinary(&a0, &b0)
        .mul_monomial(&shift)
        .normalize_unit()
}

fn gcd_ordinary(a: &Poly, b: &Poly) -> Poly {
    if a.is_constant() || b.is_constant() {
        return Poly::one();
    }
    if a == b {
        return a.normalize_unit();
    }
    if let (Some((ma, _)), Some((mb, _))) = (a.as_monomial(), b.as_monomial()) {
        return Poly::term(ma.meet(mb), Rational::one());
    }
    let mut vars = a.vars();
    vars.extend(b.vars());
    vars.sort();
    vars.dedup();
    for &y in &vars {
        if a.degree_in(y) > 0 && b.degree_in(y) > 0 && image_gcd_degree(a, b, y, &vars) == Some(0) {
            // the gcd does not involve y
            return gcd_ordinary(&content_in(a, y), &content_in(b, y));
        }
    }
    let x = vars[0];
    if a.degree_in(x) == 0 {
        return gcd_ordinary(a, &content_in(b, x));
    }
    if b.degree_in(x) == 0 {
        return gcd_ordinary(&content_in(a, x), b);
    }
    let ua = a.to_univariate(x);
    let ub = b.to_univariate(x);
    let ca = content_of(&ua);
    let cb = content_of(&ub);
    let c = gcd_ordinary(&ca, &cb);
    let pa = divide_coeffs(&ua, &ca);
    let pb = divide_coeffs(&ub, &cb);
    let g = primitive_prs(pa, pb);
    let g = Poly::from_univariate(&g, x);
    c.mul(&g).normalize_unit()
}

/// Degree of the univariate gcd after specializing every variable except
/// `x` at a point where both leading coefficients in `x` survive. This bounds
/// the degree in `x` of the true gcd from above.
fn image_gcd_degree(a: &Poly, b: &Poly, x: Var, vars: &[Var]) -> Option<usize> {
    const POINTS: [i64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    let (ua, ub) = (a.to_univariate(x), b.to_univariate(x));
    for attempt in 0..3 {
        let lookup = |v: Var| {
            let i = vars.iter().position(|&w| w == v)?;
            Some(rational_from_i64(POINTS[(3 * i + 5 * attempt) % POINTS.len()]))
        };
        let image = |u: &[Poly]| -> Option<Vec<Rational>> { u.iter().map(|c| c.eval(&lookup).ok()).collect() };
        let (Some(ia), Some(ib)) = (image(&ua), image(&ub)) else {
            return None;
        };
        if ia.last().is_some_and(Zero::is_zero) || ib.last().is_some_and(Zero::is_zero) {
            continue;
        }
        return Some(univariate_gcd_degree(ia, ib));
    }
    None
}

fn univariate_gcd_degree(mut f: Vec<Rational>, mut g: Vec<Rational>) -> usize {
    let trim = |p: &mut Vec<Rational>| {
        while p.last().is_some_and(Zero::is_zero) {
            p.pop();
        }
    };
    trim(&mut f);
    trim(&mut g);
    while !g.is_empty() {
        // f mod g over Q
        let lg = g.last().unwrap().clone();
        while f.len() >= g.len() {
            let factor = f.last().unwrap() / &lg;
            let shift = f.len() - g.len();
            for (i, gi) in g.iter().enumerate() {
                f[i + shift] -= &factor * gi;
            }
            f.pop();
            trim(&mut f);
        }
        std::mem::swap(&mut f, &mut g);
    }
    f.len().saturating_sub(1)
}

fn content_in(p: &Poly, x: Var) -> Poly {
    content_of(&p.to_univariate(x))
}

fn content_of(coeffs: &[Poly]) -> Poly {
    let mut iter = coeffs.iter().filter(|c| !c.is_zero());
    let Some(first) = iter.next() else {
        return Poly::zero();
    };
    let mut g = first.normalize_unit();
    for c in iter {
        if g.is_constant() {
            return Poly::one();
        }
        g = gcd_ordinary(&g, c);
    }
    if g.is_constant() {
        Poly::one()
    } else {
        g
    }
}

fn divide_coeffs(coeffs: &[Poly], d: &Poly) -> Vec<Poly> {
    if d.is_one() {
        return coeffs.to_vec();
    }
    coeffs
        .iter()
        .map(|c| c.div_exact(d).expect("content divides every coefficient"))
        .collect()
}

fn trim(p: &mut Vec<Poly>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

/// Pseudo-remainder of univariate polynomials with polynomial coefficients.
fn prem(f: &[Poly], g: &[Poly]) -> Vec<Poly> {
    let dg = g.len() - 1;
    let lg = &g[dg];
    let mut r = f.to_vec();
    trim(&mut r);
    while !r.is_empty() && r.len() > dg {
        let lr = r.last().unwrap().clone();
        let shift = r.len() - 1 - dg;
        for c in r.iter_mut() {
            *c = c.mul(lg);
        }
        for (i, gi) in g.iter().enumerate() {
            r[i + shift] = r[i + shift].sub(&lr.mul(gi));
        }
        trim(&mut r);
    }
    r
}

/// Divides out the rational content `gcd(numerators) / lcm(denominators)`,
/// which `content_of` leaves behind; without this the pseudo-remainders
/// swell exponentially.
fn strip_numeric_content(coeffs: Vec<Poly>) -> Vec<Poly> {
    let mut num = BigInt::zero();
    let mut den = BigInt::one();
    for (_, c) in coeffs.iter().flat_map(|p| p.terms.iter()) {
        num = num.gcd(c.numer());
        den = den.lcm(c.denom());
    }
    if num.is_zero() || (num.is_one() && den.is_one()) {
        return coeffs;
    }
    let scale = Rational::new(den, num);
    coeffs.iter().map(|p| p.scale(&scale)).collect()
}

fn primitive_prs(a: Vec<Poly>, b: Vec<Poly>) -> Vec<Poly> {
    let (f, g) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let (mut f, mut g) = (strip_numeric_content(f), strip_numeric_content(g));
    loop {
        let r = prem(&f, &g);
        if r.is_empty() {
            let c = content_of(&g);
            return divide_coeffs(&g, &c);
        }
        if r.len() == 1 {
            return vec![Poly::one()];
        }
        let c = content_of(&r);
        f = g;
        g = strip_numeric_content(divide_coeffs(&r, &c));
    }
}

pub fn rational_from_i64(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rational_abs_cmp(a: &Rational, b: &Rational) -> Ordering {
    a.abs().cmp(&b.abs())
}
