use std::collections::BTreeSet;

use super::net::NetRealization;
use super::NetError;

/// A net without coordinates: for each class, `d` blocks partitioning the
/// point indices `0..d²`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CombinatorialNet {
    pub m: usize,
    pub d: usize,
    pub classes: Vec<Vec<BTreeSet<usize>>>,
}

impl CombinatorialNet {
    /// Each class partitions `0..d²` into `d` blocks of size `d`, and blocks
    /// of different classes share exactly one point.
    pub fn check_axioms(&self) -> Result<(), NetError> {
        let d = self.d;
        let all: BTreeSet<usize> = (0..d * d).collect();
        for (i, class) in self.classes.iter().enumerate() {
            let union: BTreeSet<usize> = class.iter().flatten().copied().collect();
            if class.len() != d || class.iter().any(|b| b.len() != d) || union != all {
                return Err(NetError::CombinatorialAxiom(format!(
                    "class {i} is not a partition of {} points into {d} blocks of {d}",
                    d * d
                )));
            }
        }
        for (i, a) in self.classes.iter().enumerate() {
            for (j, b) in self.classes.iter().enumerate().skip(i + 1) {
                for (x, ba) in a.iter().enumerate() {
                    for (y, bb) in b.iter().enumerate() {
                        let shared = ba.intersection(bb).count();
                        if shared != 1 {
                            return Err(NetError::CombinatorialAxiom(format!(
                                "block {x} of class {i} and block {y} of class {j} share {shared} points"
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

impl NetRealization {
    /// Forgets coordinates; base points are indexed in sorted order.
    pub fn combinatorial(&self) -> CombinatorialNet {
        let classes = self
            .classes()
            .iter()
            .map(|lines| {
                lines
                    .iter()
                    .map(|l| {
                        self.base_points()
                            .iter()
                            .enumerate()
                            .filter(|(_, p)| l.contains(p))
                            .map(|(i, _)| i)
                            .collect()
                    })
                    .collect()
            })
            .collect();
        CombinatorialNet { m: self.m(), d: self.d(), classes }
    }
}

fn check_latin(index: usize, square: &[Vec<usize>], d: usize) -> Result<(), NetError> {
    let not_latin = |reason: String| NetError::NotLatin { square: index, reason };
    if square.len() != d || square.iter().any(|r| r.len() != d) {
        return Err(not_latin(format!("not {d}x{d}")));
    }
    let full: BTreeSet<usize> = (0..d).collect();
    for (i, row) in square.iter().enumerate() {
        if row.iter().copied().collect::<BTreeSet<_>>() != full {
            return Err(not_latin(format!("row {i} is not a permutation of 0..{d}")));
        }
    }
    for j in 0..d {
        if square.iter().map(|r| r[j]).collect::<BTreeSet<_>>() != full {
            return Err(not_latin(format!("column {j} is not a permutation of 0..{d}")));
        }
    }
    Ok(())
}

/// Net of rows, columns and one class per square (its symbol level sets);
/// cell `(i, j)` is point `i·d + j`. Squares use symbols `0..d`.
pub fn from_latin_squares(squares: &[Vec<Vec<usize>>]) -> Result<CombinatorialNet, NetError> {
    let d = squares.first().map_or(0, Vec::len);
    if squares.is_empty() {
        return Err(NetError::TooFewClasses(2));
    }
    if d < 3 {
        return Err(NetError::DegreeTooSmall(d));
    }
    for (i, s) in squares.iter().enumerate() {
        check_latin(i, s, d)?;
    }
    for i in 0..squares.len() {
        for j in i + 1..squares.len() {
            let pairs: BTreeSet<(usize, usize)> = (0..d)
                .flat_map(|r| (0..d).map(move |c| (r, c)))
                .map(|(r, c)| (squares[i][r][c], squares[j][r][c]))
                .collect();
            if pairs.len() != d * d {
                return Err(NetError::NotOrthogonal { first: i, second: j });
            }
        }
    }
    let rows = (0..d).map(|r| (0..d).map(|c| r * d + c).collect()).collect();
    let cols = (0..d).map(|c| (0..d).map(|r| r * d + c).collect()).collect();
    let mut classes = vec![rows, cols];
    for s in squares {
        classes.push(
            (0..d)
                .map(|sym| {
                    (0..d * d).filter(|&p| s[p / d][p % d] == sym).collect()
                })
                .collect(),
        );
    }
    let net = CombinatorialNet { m: classes.len(), d, classes };
    net.check_axioms()?;
    Ok(net)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::Field;
    use crate::net_geometry::{fermat_net, hesse_net};

    fn cyclic(d: usize, step: usize) -> Vec<Vec<usize>> {
        (0..d).map(|i| (0..d).map(|j| (step * i + j) % d).collect()).collect()
    }

    #[test]
    fn order_three_examples() {
        let net = from_latin_squares(&[cyclic(3, 1)]).unwrap();
        assert_eq!((net.m, net.d), (3, 3));
        let net = from_latin_squares(&[cyclic(3, 1), cyclic(3, 2)]).unwrap();
        assert_eq!((net.m, net.d), (4, 3));
        assert!(matches!(
            from_latin_squares(&[cyclic(3, 1), cyclic(3, 1)]),
            Err(NetError::NotOrthogonal { first: 0, second: 1 })
        ));
    }

    #[test]
    fn prime_order_mols() {
        // d-1 MOLS of prime order give the affine plane: a (d+1, d) net
        let squares: Vec<_> = (1..5).map(|s| cyclic(5, s)).collect();
        let net = from_latin_squares(&squares).unwrap();
        assert_eq!(net.m, 6);
    }

    #[test]
    fn rejects_non_latin() {
        let mut s = cyclic(3, 1);
        s[0][0] = 1;
        assert!(matches!(from_latin_squares(&[s]), Err(NetError::NotLatin { square: 0, .. })));
        assert!(matches!(from_latin_squares(&[cyclic(4, 2)]), Err(NetError::NotLatin { .. })));
    }

    #[test]
    fn realizations_satisfy_combinatorial_axioms() {
        let c3 = Field::cyclotomic(3).unwrap();
        hesse_net(&c3).unwrap().combinatorial().check_axioms().unwrap();
        fermat_net(4, &Field::prime(13).unwrap()).unwrap().combinatorial().check_axioms().unwrap();
    }
}
