//! 0-1 matrices: boolean powers, irreducibility/primitivity, exact path
//! counts and the Perron eigenvalue.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{invalid, precondition, Error, Result};

/// Square boolean matrix with no structural requirements.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BoolMatrix {
    n: usize,
    bits: Vec<bool>,
}

impl BoolMatrix {
    pub fn zeros(n: usize) -> Self {
        BoolMatrix {
            n,
            bits: vec![false; n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn from_rows<R: AsRef<[u8]>>(rows: &[R]) -> Result<Self> {
        let n = rows.len();
        let mut m = Self::zeros(n);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != n {
                return invalid(format!("row {i} has {} entries, expected {n}", row.len()));
            }
            for (j, &v) in row.iter().enumerate() {
                match v {
                    0 => {}
                    1 => m.set(i, j, true),
                    _ => return invalid(format!("entry ({i},{j}) = {v} is not 0 or 1")),
                }
            }
        }
        Ok(m)
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.bits[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: bool) {
        self.bits[i * self.n + j] = v;
    }

    pub fn rows(&self) -> Vec<Vec<u8>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j) as u8).collect())
            .collect()
    }

    pub fn ones(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    pub fn mul(&self, other: &BoolMatrix) -> BoolMatrix {
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                if self.get(i, k) {
                    for j in 0..n {
                        if other.get(k, j) {
                            out.set(i, j, true);
                        }
                    }
                }
            }
        }
        out
    }

    pub fn is_positive(&self) -> bool {
        self.bits.iter().all(|&b| b)
    }

    /// Reachability by paths of length at least one.
    fn reach(&self) -> BoolMatrix {
        let n = self.n;
        let mut out = Self::zeros(n);
        for s in 0..n {
            let mut stack: Vec<usize> = (0..n).filter(|&j| self.get(s, j)).collect();
            while let Some(v) = stack.pop() {
                if out.get(s, v) {
                    continue;
                }
                out.set(s, v, true);
                stack.extend((0..n).filter(|&j| self.get(v, j) && !out.get(s, j)));
            }
        }
        out
    }

    pub fn classify(&self) -> Classification {
        let irreducible = self.n > 0 && self.reach().is_positive();
        let mut witness_power = None;
        if irreducible {
            let bound = (self.n - 1) * (self.n - 1) + 1;
            let mut p = self.clone();
            for k in 1..=bound {
                if p.is_positive() {
                    witness_power = Some(k);
                    break;
                }
                p = p.mul(self);
            }
        }
        Classification {
            irreducible,
            primitive: witness_power.is_some(),
            witness_power,
        }
    }
}

/// Result of [`matrix_classify`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Classification {
    pub irreducible: bool,
    pub primitive: bool,
    /// Least `k` with `A^k` entrywise positive, when primitive.
    pub witness_power: Option<usize>,
}

/// An essential 0-1 matrix: no all-zero row or column.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ZeroOneMatrix(BoolMatrix);

impl ZeroOneMatrix {
    pub fn new(m: BoolMatrix) -> Result<Self> {
        let n = m.order();
        if n == 0 {
            return invalid("matrix order must be positive");
        }
        for i in 0..n {
            if !(0..n).any(|j| m.get(i, j)) {
                return invalid(format!("row {i} is all zero (matrix not essential)"));
            }
            if !(0..n).any(|j| m.get(j, i)) {
                return invalid(format!("column {i} is all zero (matrix not essential)"));
            }
        }
        Ok(ZeroOneMatrix(m))
    }

    pub fn from_rows<R: AsRef<[u8]>>(rows: &[R]) -> Result<Self> {
        Self::new(BoolMatrix::from_rows(rows)?)
    }

    pub fn order(&self) -> usize {
        self.0.order()
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.0.get(i, j)
    }

    pub fn as_bool(&self) -> &BoolMatrix {
        &self.0
    }

    pub fn rows(&self) -> Vec<Vec<u8>> {
        self.0.rows()
    }

    /// Sum of all entries of `A^power`, exactly.
    pub fn power_entry_sum(&self, power: usize) -> BigUint {
        let n = self.order();
        let mut v: Vec<BigUint> = vec![BigUint::one(); n];
        for _ in 0..power {
            let mut next = vec![BigUint::zero(); n];
            for (i, acc) in next.iter_mut().enumerate() {
                for (j, vj) in v.iter().enumerate() {
                    if self.get(i, j) {
                        *acc += vj;
                    }
                }
            }
            v = next;
        }
        v.into_iter().sum()
    }
}

pub fn matrix_classify(a: &ZeroOneMatrix) -> Classification {
    a.0.classify()
}

const PERRON_MAX_ITER: usize = 1_000_000;

/// Dominant eigenvalue of an irreducible 0-1 matrix by power iteration.
///
/// Iterates on `A` (or `A + I` when `A` is not primitive, subtracting 1
/// afterwards) from the all-ones vector. Convergence is declared once the
/// Collatz-Wielandt bracket `min (Mx)_i/x_i <= rho <= max (Mx)_i/x_i` is
/// narrower than `tol`; the reported value is the Rayleigh quotient clamped
/// to that bracket.
pub fn perron_eigenvalue(a: &ZeroOneMatrix, tol: f64) -> Result<f64> {
    if !(tol > 0.0) {
        return precondition("tolerance must be positive");
    }
    let class = matrix_classify(a);
    if !class.irreducible {
        return precondition("Perron eigenvalue requires an irreducible matrix");
    }
    let n = a.order();
    let shift = if class.primitive { 0.0 } else { 1.0 };
    let apply = |x: &[f64]| -> Vec<f64> {
        (0..n)
            .map(|i| {
                shift * x[i]
                    + (0..n)
                        .filter(|&j| a.get(i, j))
                        .map(|j| x[j])
                        .sum::<f64>()
            })
            .collect()
    };
    let mut x = vec![1.0f64; n];
    let mut estimate = f64::NAN;
    for _ in 0..PERRON_MAX_ITER {
        let y = apply(&x);
        let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
        for (yi, xi) in y.iter().zip(&x) {
            let r = yi / xi;
            lo = lo.min(r);
            hi = hi.max(r);
        }
        let xy: f64 = x.iter().zip(&y).map(|(p, q)| p * q).sum();
        let xx: f64 = x.iter().map(|p| p * p).sum();
        estimate = (xy / xx).clamp(lo, hi) - shift;
        if hi - lo < tol {
            return Ok(estimate);
        }
        let norm = y.iter().cloned().fold(0.0, f64::max);
        x = y.into_iter().map(|v| v / norm).collect();
    }
    Err(Error::NoConvergence {
        iterations: PERRON_MAX_ITER,
        last_estimate: estimate,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_essential() {
        assert!(ZeroOneMatrix::from_rows(&[[1u8, 1], [0, 0]]).is_err());
        assert!(ZeroOneMatrix::from_rows(&[[1u8, 0], [1, 0]]).is_err());
        assert!(BoolMatrix::from_rows(&[[1u8, 2], [0, 0]]).is_err());
        assert!(BoolMatrix::from_rows(&[vec![1u8, 1], vec![0]]).is_err());
    }

    #[test]
    fn classification_examples() {
        let mickey = ZeroOneMatrix::from_rows(&[
            [1u8, 1, 0, 0],
            [0, 0, 1, 1],
            [1, 1, 0, 0],
            [0, 1, 0, 0],
        ])
        .unwrap();
        assert!(matrix_classify(&mickey).irreducible);

        let perm = ZeroOneMatrix::from_rows(&[[0u8, 1], [1, 0]]).unwrap();
        let c = matrix_classify(&perm);
        assert!(c.irreducible && !c.primitive);
        assert_eq!(c.witness_power, None);

        let full = ZeroOneMatrix::from_rows(&[[1u8, 1], [1, 1]]).unwrap();
        assert_eq!(matrix_classify(&full).witness_power, Some(1));

        let golden = ZeroOneMatrix::from_rows(&[[1u8, 1], [1, 0]]).unwrap();
        assert_eq!(matrix_classify(&golden).witness_power, Some(2));

        let reducible = ZeroOneMatrix::from_rows(&[[1u8, 1], [0, 1]]).unwrap();
        let c = matrix_classify(&reducible);
        assert!(!c.irreducible && !c.primitive);
    }

    #[test]
    fn wielandt_extremal_matrix_reaches_bound() {
        // n-cycle plus one chord: exponent (n-1)^2 + 1.
        let n = 5;
        let mut m = BoolMatrix::zeros(n);
        for i in 0..n {
            m.set(i, (i + 1) % n, true);
        }
        m.set(n - 1, 1, true);
        let z = ZeroOneMatrix::new(m).unwrap();
        assert_eq!(matrix_classify(&z).witness_power, Some((n - 1) * (n - 1) + 1));
    }

    #[test]
    fn perron_golden_and_trivial() {
        let golden = ZeroOneMatrix::from_rows(&[[1u8, 1], [1, 0]]).unwrap();
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        assert!((perron_eigenvalue(&golden, 1e-12).unwrap() - phi).abs() < 1e-9);
        let one = ZeroOneMatrix::from_rows(&[[1u8]]).unwrap();
        assert!((perron_eigenvalue(&one, 1e-12).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn perron_periodic_uses_shift() {
        let perm = ZeroOneMatrix::from_rows(&[[0u8, 1], [1, 0]]).unwrap();
        assert!((perron_eigenvalue(&perm, 1e-12).unwrap() - 1.0).abs() < 1e-9);
        // Bipartite 2x2 blocks of ones: spectral radius 2, period 2.
        let bip = ZeroOneMatrix::from_rows(&[
            [0u8, 0, 1, 1],
            [0, 0, 1, 1],
            [1, 1, 0, 0],
            [1, 1, 0, 0],
        ])
        .unwrap();
        assert!((perron_eigenvalue(&bip, 1e-12).unwrap() - 2.0).abs() < 1e-9);
    }

    #[test]
    fn perron_rejects_reducible_and_bad_tol() {
        let red = ZeroOneMatrix::from_rows(&[[1u8, 1], [0, 1]]).unwrap();
        assert!(matches!(
            perron_eigenvalue(&red, 1e-9),
            Err(Error::Precondition(_))
        ));
        let golden = ZeroOneMatrix::from_rows(&[[1u8, 1], [1, 0]]).unwrap();
        assert!(perron_eigenvalue(&golden, 0.0).is_err());
    }

    #[test]
    fn entry_sums_are_fibonacci() {
        let golden = ZeroOneMatrix::from_rows(&[[1u8, 1], [1, 0]]).unwrap();
        let sums: Vec<u64> = (0..8)
            .map(|p| golden.power_entry_sum(p).try_into().unwrap())
            .collect();
        assert_eq!(sums, vec![2, 3, 5, 8, 13, 21, 34, 55]);
    }
}
