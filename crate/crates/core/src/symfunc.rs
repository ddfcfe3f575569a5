//! Partitions, complete homogeneous polynomials and Schur polynomials.
//!
//! Schur polynomials come from two production algorithms that must agree:
//! the Jacobi-Trudi determinant in the `h_k` (division free, the default) and
//! the bialternant `a_{lambda+delta} / a_delta`. A third route, summing over
//! semistandard tableaux, is kept as a reference oracle.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::ringcore::Scalar;

/// Weakly decreasing list of nonnegative parts; trailing zeros allowed.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Partition> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Parse(format!("{parts:?} is not weakly decreasing")));
        }
        Ok(Partition(parts))
    }

    pub fn empty() -> Partition {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    /// Parts with trailing zeros removed.
    pub fn nonzero_parts(&self) -> &[u32] {
        let len = self.length();
        &self.0[..len]
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn length(&self) -> usize {
        self.0.iter().take_while(|&&p| p > 0).count()
    }

    /// Parts padded with zeros (or trimmed of zeros) to exactly `len` entries.
    pub fn padded(&self, len: usize) -> Vec<u32> {
        let mut parts = self.nonzero_parts().to_vec();
        parts.resize(len.max(parts.len()), 0);
        parts
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts = self.nonzero_parts();
        if parts.is_empty() {
            return write!(f, "()");
        }
        let text: Vec<String> = parts.iter().map(u32::to_string).collect();
        write!(f, "({})", text.join(","))
    }
}

/// Partitions of exactly `size` with at most `max_parts` parts, in
/// reverse-lexicographic order.
pub fn partitions_of(size: u32, max_parts: usize) -> Vec<Partition> {
    fn go(remaining: u32, cap: u32, slots: usize, prefix: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition(prefix.clone()));
            return;
        }
        if slots == 0 {
            return;
        }
        for part in (1..=cap.min(remaining)).rev() {
            prefix.push(part);
            go(remaining - part, part, slots - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(size, size, max_parts, &mut Vec::new(), &mut out);
    out
}

/// All partitions with `|lambda| <= size_bound` and at most `max_parts`
/// parts, ordered by size and then reverse-lexicographically.
pub fn partitions_up_to(size_bound: u32, max_parts: usize) -> Vec<Partition> {
    (0..=size_bound)
        .flat_map(|k| partitions_of(k, max_parts))
        .collect()
}

/// `h_0, ..., h_max` of `vars`.
pub fn complete_homogeneous_all(max: usize, vars: &[Scalar]) -> Vec<Scalar> {
    // h_k(x_1..x_j) = h_k(x_1..x_{j-1}) + x_j h_{k-1}(x_1..x_j)
    let mut h = vec![Scalar::zero(); max + 1];
    h[0] = Scalar::one();
    for x in vars {
        for k in 1..=max {
            let carry = x.mul(&h[k - 1]);
            h[k] = h[k].add(&carry);
        }
    }
    h
}

pub fn complete_homogeneous(k: usize, vars: &[Scalar]) -> Scalar {
    complete_homogeneous_all(k, vars).pop().expect("k + 1 entries")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum SchurAlgorithm {
    #[default]
    JacobiTrudi,
    Bialternant,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchurValue {
    pub value: Scalar,
    /// Set when `length(lambda)` exceeds the number of variables, where the
    /// polynomial vanishes identically.
    pub vanishes_by_length: bool,
}

pub fn schur(lambda: &Partition, vars: &[Scalar]) -> SchurValue {
    schur_with(lambda, vars, SchurAlgorithm::JacobiTrudi)
        .expect("Jacobi-Trudi is defined for every input")
}

pub fn schur_with(lambda: &Partition, vars: &[Scalar], algorithm: SchurAlgorithm) -> Result<SchurValue> {
    if lambda.length() > vars.len() {
        return Ok(SchurValue {
            value: Scalar::zero(),
            vanishes_by_length: true,
        });
    }
    let value = match algorithm {
        SchurAlgorithm::JacobiTrudi => jacobi_trudi(lambda, vars),
        SchurAlgorithm::Bialternant => bialternant(lambda, vars)?,
    };
    Ok(SchurValue {
        value,
        vanishes_by_length: false,
    })
}

/// `det(h_{lambda_i - i + j})` over the nonzero parts.
pub fn jacobi_trudi(lambda: &Partition, vars: &[Scalar]) -> Scalar {
    let parts = lambda.nonzero_parts();
    let len = parts.len();
    if len == 0 {
        return Scalar::one();
    }
    let max = parts[0] as usize + len;
    let h = complete_homogeneous_all(max, vars);
    let matrix: Vec<Vec<Scalar>> = (0..len)
        .map(|i| {
            (0..len)
                .map(|j| {
                    let idx = parts[i] as i64 - i as i64 + j as i64;
                    if idx < 0 {
                        Scalar::zero()
                    } else {
                        h[idx as usize].clone()
                    }
                })
                .collect()
        })
        .collect();
    determinant(&matrix)
}

/// `a_{lambda + delta} / a_delta` with `delta = (k-1, ..., 0)`; fails when two
/// variables coincide.
pub fn bialternant(lambda: &Partition, vars: &[Scalar]) -> Result<Scalar> {
    let k = vars.len();
    if lambda.length() > k {
        return Ok(Scalar::zero());
    }
    if k == 0 {
        return Ok(Scalar::one());
    }
    for i in 0..k {
        for j in i + 1..k {
            if vars[i] == vars[j] {
                return Err(Error::DegenerateVariables(i, j));
            }
        }
    }
    let parts = lambda.padded(k);
    let alternant = |shift: &dyn Fn(usize) -> i64| -> Scalar {
        let matrix: Vec<Vec<Scalar>> = (0..k)
            .map(|i| {
                vars.iter()
                    .map(|x| x.pow(shift(i)).expect("nonnegative exponent"))
                    .collect()
            })
            .collect();
        determinant(&matrix)
    };
    let numerator = alternant(&|i| parts[i] as i64 + (k - 1 - i) as i64);
    let vandermonde = alternant(&|i| (k - 1 - i) as i64);
    numerator.div(&vandermonde)
}

/// Laplace expansion along rows, memoized over the set of used columns.
fn determinant(matrix: &[Vec<Scalar>]) -> Scalar {
    let n = matrix.len();
    assert!(n <= 20, "determinant expansion limited to 20x20");
    fn minor(matrix: &[Vec<Scalar>], used: u32, memo: &mut HashMap<u32, Scalar>) -> Scalar {
        let row = used.count_ones() as usize;
        if row == matrix.len() {
            return Scalar::one();
        }
        if let Some(v) = memo.get(&used) {
            return v.clone();
        }
        let mut total = Scalar::zero();
        let mut sign_negative = false;
        for col in 0..matrix.len() {
            if used & (1 << col) != 0 {
                continue;
            }
            let entry = &matrix[row][col];
            if !entry.is_zero() {
                let sub = minor(matrix, used | (1 << col), memo);
                let term = entry.mul(&sub);
                total = if sign_negative { total.sub(&term) } else { total.add(&term) };
            }
            sign_negative = !sign_negative;
        }
        memo.insert(used, total.clone());
        total
    }
    minor(matrix, 0, &mut HashMap::new())
}

/// Reference oracle: sum over semistandard Young tableaux of shape `lambda`
/// with entries in `1..=vars.len()` of the content monomial.
pub fn schur_ssyt_oracle(lambda: &Partition, vars: &[Scalar]) -> Scalar {
    let mut total = Scalar::zero();
    for_each_ssyt(lambda, vars.len(), |tableau| {
        let term: Scalar = tableau
            .iter()
            .flatten()
            .map(|&e| vars[e - 1].clone())
            .product();
        total = total.add(&term);
    });
    total
}

pub fn ssyt_count(lambda: &Partition, entries: usize) -> usize {
    let mut count = 0;
    for_each_ssyt(lambda, entries, |_| count += 1);
    count
}

fn for_each_ssyt<F: FnMut(&[Vec<usize>])>(lambda: &Partition, entries: usize, mut visit: F) {
    let shape = lambda.nonzero_parts();
    if shape.len() > entries {
        return;
    }
    let mut tableau: Vec<Vec<usize>> = shape.iter().map(|&p| vec![0; p as usize]).collect();
    let cells: Vec<(usize, usize)> = shape
        .iter()
        .enumerate()
        .flat_map(|(r, &p)| (0..p as usize).map(move |c| (r, c)))
        .collect();

    fn fill<F: FnMut(&[Vec<usize>])>(
        idx: usize,
        cells: &[(usize, usize)],
        entries: usize,
        tableau: &mut Vec<Vec<usize>>,
        visit: &mut F,
    ) {
        if idx == cells.len() {
            visit(tableau);
            return;
        }
        let (r, c) = cells[idx];
        let mut low = 1;
        if c > 0 {
            low = low.max(tableau[r][c - 1]);
        }
        if r > 0 {
            low = low.max(tableau[r - 1][c] + 1);
        }
        for e in low..=entries {
            tableau[r][c] = e;
            fill(idx + 1, cells, entries, tableau, visit);
        }
    }
    fill(0, &cells, entries, &mut tableau, &mut visit);
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xs(k: usize) -> Vec<Scalar> {
        (1..=k).map(|i| Scalar::var(&format!("x{i}"))).collect()
    }

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    /// Counts partitions of `n` with at most `k` parts via the recurrence
    /// p(n, k) = p(n, k - 1) + p(n - k, k) on the conjugate shape.
    fn count_memo(n: u32, k: u32, memo: &mut HashMap<(u32, u32), u64>) -> u64 {
        if n == 0 {
            return 1;
        }
        if k == 0 {
            return 0;
        }
        if let Some(&v) = memo.get(&(n, k)) {
            return v;
        }
        let mut v = count_memo(n, k - 1, memo);
        if n >= k {
            v += count_memo(n - k, k, memo);
        }
        memo.insert((n, k), v);
        v
    }

    #[test]
    fn enumeration_examples() {
        assert_eq!(partitions_up_to(0, 3), vec![Partition::empty()]);
        let listed: Vec<Vec<u32>> = partitions_up_to(3, 2)
            .into_iter()
            .map(|p| p.parts().to_vec())
            .collect();
        assert_eq!(
            listed,
            vec![vec![], vec![1], vec![2], vec![1, 1], vec![3], vec![2, 1]]
        );
        // brute force (and the recurrence below) give 27
        assert_eq!(partitions_up_to(6, 4).len(), 27);
    }

    #[test]
    fn enumeration_counts_match_recurrence() {
        let mut memo = HashMap::new();
        for bound in 0..=10 {
            for parts in 0..=5u32 {
                let expected: u64 = (0..=bound).map(|n| count_memo(n, parts, &mut memo)).sum();
                assert_eq!(partitions_up_to(bound, parts as usize).len() as u64, expected);
            }
        }
    }

    #[test]
    fn complete_homogeneous_examples() {
        let x = xs(2);
        assert!(complete_homogeneous(0, &x).is_one());
        let expected = x[0].mul(&x[0]).add(&x[0].mul(&x[1])).add(&x[1].mul(&x[1]));
        assert_eq!(complete_homogeneous(2, &x), expected);
        let x1 = xs(1);
        assert_eq!(complete_homogeneous(3, &x1), x1[0].pow(3).unwrap());
    }

    #[test]
    fn schur_examples() {
        assert!(schur(&Partition::empty(), &xs(2)).value.is_one());
        let x = xs(3);
        assert_eq!(schur(&p(&[1]), &x).value, x[0].add(&x[1]).add(&x[2]));
        let x = xs(2);
        let expected = x[0].mul(&x[0]).mul(&x[1]).add(&x[0].mul(&x[1]).mul(&x[1]));
        assert_eq!(schur(&p(&[2, 1]), &x).value, expected);
        assert_eq!(schur_ssyt_oracle(&p(&[2, 1]), &x), expected);
    }

    #[test]
    fn too_long_partition_vanishes() {
        let v = schur(&p(&[1, 1, 1]), &xs(2));
        assert!(v.vanishes_by_length);
        assert!(v.value.is_zero());
    }

    #[test]
    fn oracle_examples() {
        let x = xs(2);
        assert_eq!(schur_ssyt_oracle(&p(&[1, 1]), &x), x[0].mul(&x[1]));
        let expected = x[0].mul(&x[0]).add(&x[0].mul(&x[1])).add(&x[1].mul(&x[1]));
        assert_eq!(schur_ssyt_oracle(&p(&[2]), &x), expected);
        assert_eq!(ssyt_count(&p(&[2, 1]), 3), 8);
    }

    #[test]
    fn too_many_parts_vanish_in_every_algorithm() {
        let lambda = Partition::new(vec![1, 1, 1]).unwrap();
        let vars = vec![Scalar::var("x1"), Scalar::var("x2")];
        assert!(jacobi_trudi(&lambda, &vars).is_zero());
        assert!(bialternant(&lambda, &vars).unwrap().is_zero());
        assert!(schur_ssyt_oracle(&lambda, &vars).is_zero());
        assert!(bialternant(&lambda, &[]).unwrap().is_zero());
    }

    #[test]
    fn bialternant_rejects_repeated_values() {
        let vars = vec![Scalar::one(), Scalar::one()];
        assert_eq!(
            schur_with(&p(&[1]), &vars, SchurAlgorithm::Bialternant),
            Err(Error::DegenerateVariables(0, 1))
        );
        // Jacobi-Trudi has no such restriction: s_(1)(1, 1) = 2
        assert_eq!(schur(&p(&[1]), &vars).value, Scalar::from_int(2));
    }

    #[test]
    fn numeric_variables() {
        let vars: Vec<Scalar> = ["1/2", "3", "-2"]
            .iter()
            .map(|s| Scalar::parse_atom(s).unwrap())
            .collect();
        for lambda in partitions_up_to(4, 3) {
            let jt = schur(&lambda, &vars).value;
            let bi = schur_with(&lambda, &vars, SchurAlgorithm::Bialternant).unwrap().value;
            assert_eq!(jt, bi, "{lambda}");
            assert_eq!(jt, schur_ssyt_oracle(&lambda, &vars), "{lambda}");
        }
    }
}
