//! Symmetric rational matrices and their inertia, plus exact rank over any
//! [`Field`](super::Field).

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::field::FieldElement;
use super::rational::Rational;
use super::ArithError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetricMatrix {
    order: usize,
    entries: Vec<Rational>,
}

/// Sylvester inertia `(n₊, n₀, n₋)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Inertia {
    pub positive: usize,
    pub zero: usize,
    pub negative: usize,
}

impl Inertia {
    pub fn signature(&self) -> i64 {
        self.positive as i64 - self.negative as i64
    }

    pub fn rank(&self) -> usize {
        self.positive + self.negative
    }

    pub fn as_triple(&self) -> (usize, usize, usize) {
        (self.positive, self.zero, self.negative)
    }
}

impl SymmetricMatrix {
    pub fn new(rows: Vec<Vec<Rational>>) -> Result<Self, ArithError> {
        let order = rows.len();
        if order == 0 {
            return Err(ArithError::EmptyMatrix);
        }
        if rows.iter().any(|r| r.len() != order) {
            return Err(ArithError::NotSquare);
        }
        for i in 0..order {
            for j in 0..i {
                if rows[i][j] != rows[j][i] {
                    return Err(ArithError::NotSymmetric { row: i, col: j });
                }
            }
        }
        Ok(SymmetricMatrix { order, entries: rows.into_iter().flatten().collect() })
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Result<Self, ArithError> {
        Self::new(
            rows.iter()
                .map(|r| r.iter().map(|&v| Rational::from_integer(v.into())).collect())
                .collect(),
        )
    }

    /// Builds from the upper triangle `f(i, j)` with `i <= j`.
    pub fn from_fn(order: usize, f: impl Fn(usize, usize) -> Rational) -> Self {
        assert!(order > 0, "matrix order must be positive");
        let mut entries = vec![Rational::zero(); order * order];
        for i in 0..order {
            for j in i..order {
                let v = f(i, j);
                entries[j * order + i] = v.clone();
                entries[i * order + j] = v;
            }
        }
        SymmetricMatrix { order, entries }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.order + j]
    }

    pub fn rows(&self) -> Vec<Vec<Rational>> {
        self.entries.chunks(self.order).map(|r| r.to_vec()).collect()
    }

    pub fn apply(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.order);
        (0..self.order)
            .map(|i| (0..self.order).map(|j| self.get(i, j) * &v[j]).sum())
            .collect()
    }

    /// `vᵀ M v`.
    pub fn quadratic_form(&self, v: &[Rational]) -> Rational {
        self.apply(v).iter().zip(v).map(|(a, b)| a * b).sum()
    }

    /// `Aᵀ M A` for a square `A` of the same order.
    pub fn congruent(&self, a: &[Vec<Rational>]) -> SymmetricMatrix {
        let n = self.order;
        assert!(a.len() == n && a.iter().all(|r| r.len() == n));
        let ma: Vec<Vec<Rational>> = (0..n)
            .map(|i| (0..n).map(|j| (0..n).map(|k| self.get(i, k) * &a[k][j]).sum()).collect())
            .collect();
        SymmetricMatrix::from_fn(n, |i, j| (0..n).map(|k| &a[k][i] * &ma[k][j]).sum())
    }

    /// Inertia by symmetric Gaussian elimination (congruence), see
    /// [`signature_of_symmetric_matrix`].
    pub fn inertia(&self) -> Inertia {
        signature_of_symmetric_matrix(self)
    }
}

/// Exact inertia of a symmetric matrix.
///
/// Repeatedly takes a Schur complement: on a nonzero diagonal pivot (one
/// sign recorded), or, when the whole diagonal of the remaining block is zero,
/// on a 2×2 hyperbolic block `[[0, b], [b, 0]]` (one positive and one negative
/// direction). A zero remaining block contributes its order to the nullity.
pub fn signature_of_symmetric_matrix(m: &SymmetricMatrix) -> Inertia {
    let mut inertia = Inertia { positive: 0, zero: 0, negative: 0 };
    let mut a = m.rows();
    let mut active: Vec<usize> = (0..m.order).collect();
    while !active.is_empty() {
        if let Some(pos) = active.iter().position(|&i| !a[i][i].is_zero()) {
            let p = active.remove(pos);
            let pivot = a[p][p].clone();
            if pivot.is_positive() {
                inertia.positive += 1;
            } else {
                inertia.negative += 1;
            }
            let support: Vec<usize> = active.iter().copied().filter(|&u| !a[u][p].is_zero()).collect();
            for &u in &support {
                let factor = &a[u][p] / &pivot;
                for &v in &support {
                    let delta = &factor * &a[p][v];
                    a[u][v] -= delta;
                }
            }
            continue;
        }
        let off = active
            .iter()
            .enumerate()
            .flat_map(|(x, &i)| active[x + 1..].iter().map(move |&j| (i, j)))
            .find(|&(i, j)| !a[i][j].is_zero());
        let Some((i, j)) = off else {
            inertia.zero += active.len();
            break;
        };
        inertia.positive += 1;
        inertia.negative += 1;
        let b = a[i][j].clone();
        active.retain(|&u| u != i && u != j);
        let support: Vec<usize> = active
            .iter()
            .copied()
            .filter(|&u| !a[u][i].is_zero() || !a[u][j].is_zero())
            .collect();
        for &u in &support {
            for &v in &support {
                let delta = (&a[u][j] * &a[i][v] + &a[u][i] * &a[j][v]) / &b;
                a[u][v] -= delta;
            }
        }
    }
    inertia
}

/// Exact rank of a matrix over a field by row reduction.
pub fn rank(rows: &[Vec<FieldElement>]) -> usize {
    let mut a: Vec<Vec<FieldElement>> = rows.to_vec();
    let cols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot_row) = (rank..a.len()).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(rank, pivot_row);
        let inv = a[rank][col].inv().expect("pivot is nonzero");
        let pivot: Vec<FieldElement> = a[rank].iter().map(|x| x * &inv).collect();
        for row in a.iter_mut().skip(rank + 1) {
            if row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (x, p) in row.iter_mut().zip(&pivot) {
                *x = &*x - &(&factor * p);
            }
        }
        a[rank] = pivot;
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::rational::int;
    use proptest::prelude::*;

    fn eigen_inertia(m: &SymmetricMatrix) -> (usize, usize, usize) {
        use num_traits::ToPrimitive;
        let n = m.order();
        let dm = nalgebra::DMatrix::from_fn(n, n, |i, j| m.get(i, j).to_f64().unwrap());
        let eig = dm.symmetric_eigen().eigenvalues;
        let pos = eig.iter().filter(|&&x| x > 1e-9).count();
        let neg = eig.iter().filter(|&&x| x < -1e-9).count();
        (pos, n - pos - neg, neg)
    }

    #[test]
    fn small_examples() {
        let one = SymmetricMatrix::from_i64(&[vec![1]]).unwrap();
        assert_eq!(one.inertia().as_triple(), (1, 0, 0));

        let j3 = SymmetricMatrix::from_fn(3, |i, j| if i == j { int(-2) } else { int(1) });
        assert_eq!(eigen_inertia(&j3), (0, 1, 2));
        assert_eq!(j3.inertia().as_triple(), (0, 1, 2));
        assert_eq!(j3.inertia().signature(), -2);

        let d = SymmetricMatrix::from_i64(&[vec![1, 0, 0], vec![0, -1, 0], vec![0, 0, -1]]).unwrap();
        assert_eq!(d.inertia().as_triple(), (1, 0, 2));
    }

    #[test]
    fn hyperbolic_blocks_and_zero() {
        let h = SymmetricMatrix::from_i64(&[vec![0, 3], vec![3, 0]]).unwrap();
        assert_eq!(h.inertia().as_triple(), (1, 0, 1));
        let z = SymmetricMatrix::from_i64(&[vec![0, 0], vec![0, 0]]).unwrap();
        assert_eq!(z.inertia().as_triple(), (0, 2, 0));
        let mixed = SymmetricMatrix::from_i64(&[
            vec![0, 1, 2, 0],
            vec![1, 0, 0, 1],
            vec![2, 0, 0, 0],
            vec![0, 1, 0, 0],
        ])
        .unwrap();
        assert_eq!(mixed.inertia().as_triple(), eigen_inertia(&mixed));
    }

    #[test]
    fn rejects_malformed() {
        assert!(matches!(SymmetricMatrix::from_i64(&[vec![1, 2], vec![3, 4]]), Err(ArithError::NotSymmetric { .. })));
        assert!(matches!(SymmetricMatrix::from_i64(&[vec![1, 2]]), Err(ArithError::NotSquare)));
        assert!(matches!(SymmetricMatrix::new(vec![]), Err(ArithError::EmptyMatrix)));
    }

    #[test]
    fn fiber_line_matrices() {
        for d in 2..=12i64 {
            let m = SymmetricMatrix::from_fn(d as usize, |i, j| if i == j { int(1 - d) } else { int(1) });
            let inertia = m.inertia();
            assert_eq!(inertia.signature(), 1 - d);
            assert_eq!(inertia.zero, 1);
        }
    }

    fn small_matrix() -> impl Strategy<Value = SymmetricMatrix> {
        (1usize..6).prop_flat_map(|n| {
            prop::collection::vec(-3i64..=3, n * n).prop_map(move |v| {
                SymmetricMatrix::from_fn(n, |i, j| int(v[i * n + j]))
            })
        })
    }

    proptest! {
        #[test]
        fn congruence_preserves_inertia(
            m in small_matrix(),
            seed in prop::collection::vec(-3i64..=3, 36),
        ) {
            let n = m.order();
            let a: Vec<Vec<Rational>> = (0..n).map(|i| (0..n).map(|j| int(seed[i * 6 + j])).collect()).collect();
            let a_field: Vec<Vec<FieldElement>> = {
                let q = crate::exact_arith::Field::rational();
                a.iter().map(|r| r.iter().map(|x| q.from_rational(x).unwrap()).collect()).collect()
            };
            prop_assume!(rank(&a_field) == n);
            prop_assert_eq!(m.congruent(&a).inertia(), m.inertia());
        }

        #[test]
        fn matches_eigenvalue_oracle(m in small_matrix()) {
            prop_assert_eq!(m.inertia().as_triple(), eigen_inertia(&m));
        }
    }
}
