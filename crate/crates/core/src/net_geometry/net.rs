use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::exact_arith::{rank, Field, FieldElement};

use super::projective::{line_intersection, ProjLine, ProjPoint};
use super::profile::MultiplicityProfile;
use super::NetError;

/// `m` classes of `d` projective lines together with the set of all
/// cross-class intersection points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NetRealization {
    field: Field,
    classes: Vec<Vec<ProjLine>>,
    base_points: Vec<ProjPoint>,
}

impl NetRealization {
    /// Rejects fewer than three classes, `d < 3` (taken from the first
    /// class), lines over another field, and repeated lines. Whether the
    /// classes actually form a net is left to [`validate_net`].
    pub fn new(field: Field, classes: Vec<Vec<ProjLine>>) -> Result<Self, NetError> {
        if classes.len() < 3 {
            return Err(NetError::TooFewClasses(classes.len()));
        }
        let d = classes[0].len();
        if d < 3 {
            return Err(NetError::DegreeTooSmall(d));
        }
        let mut seen = BTreeSet::new();
        for (class, lines) in classes.iter().enumerate() {
            for (index, line) in lines.iter().enumerate() {
                if line.field() != &field {
                    return Err(NetError::FieldMismatch);
                }
                if !seen.insert(line.clone()) {
                    return Err(NetError::DuplicateLine { class, index });
                }
            }
        }
        let mut points = BTreeSet::new();
        for (i, a) in classes.iter().enumerate() {
            for b in &classes[i + 1..] {
                for la in a {
                    for lb in b {
                        points.insert(line_intersection(la, lb)?);
                    }
                }
            }
        }
        Ok(NetRealization { field, classes, base_points: points.into_iter().collect() })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn m(&self) -> usize {
        self.classes.len()
    }

    /// Size of the first class.
    pub fn d(&self) -> usize {
        self.classes[0].len()
    }

    pub fn classes(&self) -> &[Vec<ProjLine>] {
        &self.classes
    }

    pub fn base_points(&self) -> &[ProjPoint] {
        &self.base_points
    }

    pub fn replace_line(&self, class: usize, index: usize, line: ProjLine) -> Result<Self, NetError> {
        let mut classes = self.classes.clone();
        *classes
            .get_mut(class)
            .and_then(|c| c.get_mut(index))
            .ok_or(NetError::ClassIndexOutOfRange { index: class, m: self.m() })? = line;
        NetRealization::new(self.field.clone(), classes)
    }
}

/// One failed net axiom with its witness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "axiom", rename_all = "snake_case")]
pub enum Violation {
    /// A base point not on exactly one line of some class.
    PointClassIncidence { point: String, class: usize, lines_through: usize },
    BasePointCount { expected: usize, found: usize },
    ClassSize { class: usize, expected: usize, found: usize },
    LinePointCount { class: usize, line: usize, expected: usize, found: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub m: usize,
    pub d: usize,
    pub field: crate::exact_arith::FieldDescriptor,
    pub base_point_count: usize,
    pub valid: bool,
    pub violations: Vec<Violation>,
}

/// Checks the net axioms against the recomputed base-point set `X`:
/// every point of `X` lies on exactly one line per class, `|X| = d²`, every
/// class has `d` lines, and every line carries exactly `d` points of `X`.
pub fn validate_net(net: &NetRealization) -> ValidationReport {
    let d = net.d();
    let mut violations = Vec::new();
    for x in &net.base_points {
        for (class, lines) in net.classes.iter().enumerate() {
            let through = lines.iter().filter(|l| l.contains(x)).count();
            if through != 1 {
                violations.push(Violation::PointClassIncidence {
                    point: x.to_string(),
                    class,
                    lines_through: through,
                });
            }
        }
    }
    if net.base_points.len() != d * d {
        violations.push(Violation::BasePointCount { expected: d * d, found: net.base_points.len() });
    }
    for (class, lines) in net.classes.iter().enumerate() {
        if lines.len() != d {
            violations.push(Violation::ClassSize { class, expected: d, found: lines.len() });
        }
        for (index, line) in lines.iter().enumerate() {
            let found = net.base_points.iter().filter(|p| line.contains(p)).count();
            if found != d {
                violations.push(Violation::LinePointCount { class, line: index, expected: d, found });
            }
        }
    }
    ValidationReport {
        m: net.m(),
        d,
        field: net.field.descriptor(),
        base_point_count: net.base_points.len(),
        valid: violations.is_empty(),
        violations,
    }
}

/// The Fermat arrangement `{x − ζⁱy}, {y − ζⁱz}, {x − ζⁱz}`, a (3, d)-net.
pub fn fermat_net(d: u32, field: &Field) -> Result<NetRealization, NetError> {
    if d < 3 {
        return Err(NetError::DegreeTooSmall(d as usize));
    }
    let zeta = field.primitive_root_of_unity(d)?;
    let (one, zero) = (field.one(), field.zero());
    let powers: Vec<FieldElement> = (0..d as u64).map(|i| -zeta.pow(i)).collect();
    let class = |f: &dyn Fn(&FieldElement) -> [FieldElement; 3]| -> Result<Vec<ProjLine>, NetError> {
        powers.iter().map(|c| ProjLine::new(f(c))).collect()
    };
    let classes = vec![
        class(&|c| [one.clone(), c.clone(), zero.clone()])?,
        class(&|c| [zero.clone(), one.clone(), c.clone()])?,
        class(&|c| [one.clone(), zero.clone(), c.clone()])?,
    ];
    NetRealization::new(field.clone(), classes)
}

/// The Hesse configuration: the coordinate triangle plus the nine lines
/// `x + ωᵃy + ωᵇz`, grouped by `a + b mod 3`.
pub fn hesse_net(field: &Field) -> Result<NetRealization, NetError> {
    let omega = field.primitive_root_of_unity(3)?;
    let mut classes = vec![vec![
        ProjLine::from_i64(field, [1, 0, 0])?,
        ProjLine::from_i64(field, [0, 1, 0])?,
        ProjLine::from_i64(field, [0, 0, 1])?,
    ]];
    for c in 0..3u64 {
        let lines = (0..3u64)
            .map(|a| {
                let b = (c + 3 - a) % 3;
                ProjLine::new([field.one(), omega.pow(a), omega.pow(b)])
            })
            .collect::<Result<Vec<_>, _>>()?;
        classes.push(lines);
    }
    NetRealization::new(field.clone(), classes)
}

/// Drops class `index`; the result must still have at least three classes.
pub fn delete_class(net: &NetRealization, index: usize) -> Result<NetRealization, NetError> {
    if index >= net.m() {
        return Err(NetError::ClassIndexOutOfRange { index, m: net.m() });
    }
    if net.m() <= 3 {
        return Err(NetError::CannotDelete { m: net.m() });
    }
    let mut classes = net.classes.clone();
    classes.remove(index);
    NetRealization::new(net.field.clone(), classes)
}

/// Hesse configuration with the coordinate triangle removed.
pub fn deleted_hesse_net(field: &Field) -> Result<NetRealization, NetError> {
    delete_class(&hesse_net(field)?, 0)
}

/// Clusters same-class intersections and counts, for each cluster point,
/// the lines of that class through it.
///
/// Fails if two lines of one class meet at a base point, or if a
/// same-class intersection also lies on a line of another class.
pub fn multiplicity_profile(net: &NetRealization) -> Result<MultiplicityProfile, NetError> {
    let base: BTreeSet<&ProjPoint> = net.base_points.iter().collect();
    let mut t: BTreeMap<u32, u64> = BTreeMap::new();
    for (class, lines) in net.classes.iter().enumerate() {
        let mut points = BTreeSet::new();
        for (i, a) in lines.iter().enumerate() {
            for b in &lines[i + 1..] {
                points.insert(line_intersection(a, b)?);
            }
        }
        for p in points {
            if base.contains(&p) {
                return Err(NetError::ProfileAnomaly(format!(
                    "lines of class {class} meet at base point {p}"
                )));
            }
            if let Some(other) = net
                .classes
                .iter()
                .enumerate()
                .find(|&(j, ls)| j != class && ls.iter().any(|l| l.contains(&p)))
                .map(|(j, _)| j)
            {
                return Err(NetError::ProfileAnomaly(format!(
                    "point {p} of class {class} also lies on class {other}"
                )));
            }
            let r = lines.iter().filter(|l| l.contains(&p)).count() as u32;
            *t.entry(r).or_insert(0) += 1;
        }
    }
    MultiplicityProfile::new(net.m() as u32, net.d() as u32, t)
}

/// A homogeneous ternary form, coefficients keyed by exponent triples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TernaryForm {
    degree: u32,
    coeffs: BTreeMap<(u32, u32, u32), FieldElement>,
    field: Field,
}

impl TernaryForm {
    /// Product of the linear forms of `lines`.
    pub fn product_of_lines(field: &Field, lines: &[ProjLine]) -> TernaryForm {
        let mut coeffs = BTreeMap::from([((0, 0, 0), field.one())]);
        for line in lines {
            let mut next: BTreeMap<(u32, u32, u32), FieldElement> = BTreeMap::new();
            for (&(i, j, k), c) in &coeffs {
                for (axis, l) in line.coeffs().iter().enumerate() {
                    if l.is_zero() {
                        continue;
                    }
                    let key = match axis {
                        0 => (i + 1, j, k),
                        1 => (i, j + 1, k),
                        _ => (i, j, k + 1),
                    };
                    let term = c * l;
                    let entry = next.entry(key).or_insert_with(|| field.zero());
                    *entry = &*entry + &term;
                }
            }
            coeffs = next;
        }
        TernaryForm { degree: lines.len() as u32, coeffs, field: field.clone() }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Dense coefficients over all `(d+1)(d+2)/2` monomials in a fixed order.
    pub fn coefficient_vector(&self) -> Vec<FieldElement> {
        let d = self.degree;
        let mut out = Vec::with_capacity(((d + 1) * (d + 2) / 2) as usize);
        for i in (0..=d).rev() {
            for j in (0..=d - i).rev() {
                let k = d - i - j;
                out.push(self.coeffs.get(&(i, j, k)).cloned().unwrap_or_else(|| self.field.zero()));
            }
        }
        out
    }
}

/// Rank of the matrix whose rows are the products of each class's lines.
pub fn forms_rank(field: &Field, classes: &[Vec<ProjLine>]) -> usize {
    let rows: Vec<Vec<FieldElement>> = classes
        .iter()
        .map(|c| TernaryForm::product_of_lines(field, c).coefficient_vector())
        .collect();
    rank(&rows)
}

/// Dimension of the span of the `m` class products; 2 means they share a pencil.
pub fn pencil_rank(net: &NetRealization) -> usize {
    forms_rank(&net.field, &net.classes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::net_geometry::profile_identities;

    fn c3() -> Field {
        Field::cyclotomic(3).unwrap()
    }

    #[test]
    fn hesse_is_a_4_3_net() {
        for field in [c3(), Field::prime(13).unwrap(), Field::prime(7).unwrap()] {
            let net = hesse_net(&field).unwrap();
            let report = validate_net(&net);
            assert!(report.valid, "{:?}", report.violations);
            assert_eq!((report.m, report.d, report.base_point_count), (4, 3, 9));
            assert_eq!(pencil_rank(&net), 2);
        }
        assert!(matches!(
            hesse_net(&Field::prime(5).unwrap()),
            Err(NetError::Arith(crate::exact_arith::ArithError::UnsupportedField { .. }))
        ));
    }

    #[test]
    fn hesse_base_points_are_zeros_of_every_triangle() {
        let field = c3();
        let net = hesse_net(&field).unwrap();
        for p in net.base_points() {
            for class in net.classes() {
                assert!(class.iter().any(|l| l.contains(p)));
            }
        }
    }

    #[test]
    fn fermat_3_over_cyclotomic_and_prime() {
        let field = c3();
        let net = fermat_net(3, &field).unwrap();
        assert!(validate_net(&net).valid);
        let zeta = field.generator().unwrap();
        // X = {[ζ^a : 1 : ζ^b]}
        let mut expected: Vec<ProjPoint> = (0..3)
            .flat_map(|a| (0..3).map(move |b| (a, b)))
            .map(|(a, b)| ProjPoint::new([zeta.pow(a), field.one(), zeta.pow(b)]).unwrap())
            .collect();
        expected.sort();
        assert_eq!(net.base_points(), &expected[..]);

        let f7 = Field::prime(7).unwrap();
        let net7 = fermat_net(3, &f7).unwrap();
        assert!(validate_net(&net7).valid);
        assert_eq!(net7.classes()[0][1], ProjLine::from_i64(&f7, [1, -2, 0]).unwrap());

        assert!(fermat_net(5, &f7).is_err());
        assert!(matches!(fermat_net(2, &f7), Err(NetError::DegreeTooSmall(2))));
    }

    #[test]
    fn perturbed_fermat_fails_axiom_one() {
        let q = Field::cyclotomic(4).unwrap();
        let net = fermat_net(4, &q).unwrap();
        let generic = ProjLine::from_i64(&q, [3, 5, 7]).unwrap();
        let bad = net.replace_line(0, 1, generic).unwrap();
        let report = validate_net(&bad);
        assert!(!report.valid);
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v, Violation::PointClassIncidence { .. })));
    }

    #[test]
    fn deletion() {
        let field = c3();
        let hesse = hesse_net(&field).unwrap();
        for i in 0..4 {
            let deleted = delete_class(&hesse, i).unwrap();
            assert!(validate_net(&deleted).valid);
            assert_eq!(deleted.base_points(), hesse.base_points());
            assert_eq!(deleted.m(), 3);
        }
        let fermat = fermat_net(3, &field).unwrap();
        assert!(matches!(delete_class(&fermat, 0), Err(NetError::CannotDelete { m: 3 })));
        assert!(matches!(delete_class(&hesse, 4), Err(NetError::ClassIndexOutOfRange { .. })));
    }

    /// Counts, per class, the pairs of lines meeting at each point and
    /// recovers r from C(r,2) pairs.
    fn profile_by_pair_counting(net: &NetRealization) -> BTreeMap<u32, u64> {
        let mut t = BTreeMap::new();
        for lines in net.classes() {
            let mut pairs: BTreeMap<ProjPoint, u64> = BTreeMap::new();
            for i in 0..lines.len() {
                for j in i + 1..lines.len() {
                    *pairs.entry(line_intersection(&lines[i], &lines[j]).unwrap()).or_insert(0) += 1;
                }
            }
            for count in pairs.values() {
                let r = (2..).find(|r: &u64| r * (r - 1) / 2 == *count).unwrap();
                *t.entry(r as u32).or_insert(0) += 1;
            }
        }
        t
    }

    #[test]
    fn profiles_of_fixtures() {
        let field = c3();
        let fermat = multiplicity_profile(&fermat_net(3, &field).unwrap()).unwrap();
        assert_eq!(fermat.t, BTreeMap::from([(3, 3)]));
        assert_eq!((fermat.f0(), fermat.f1()), (3, 9));

        let hesse_net = hesse_net(&field).unwrap();
        let hesse = multiplicity_profile(&hesse_net).unwrap();
        assert_eq!(hesse.t, profile_by_pair_counting(&hesse_net));
        assert_eq!(hesse.t, BTreeMap::from([(2, 12)]));
        assert_eq!((hesse.f0(), hesse.f1()), (12, 24));

        let deleted = multiplicity_profile(&deleted_hesse_net(&field).unwrap()).unwrap();
        assert_eq!(deleted.t, BTreeMap::from([(2, 9)]));
        assert_eq!((deleted.f0(), deleted.f1()), (9, 18));
        for p in [fermat, hesse, deleted] {
            assert!(profile_identities(&p).pass);
        }
    }

    #[test]
    fn pencil_ranks() {
        let field = c3();
        assert_eq!(pencil_rank(&fermat_net(3, &field).unwrap()), 2);
        let hesse = hesse_net(&field).unwrap();
        assert_eq!(pencil_rank(&hesse), 2);
        // any three of the four triangles still span only the pencil
        for skip in 0..4 {
            let sub: Vec<Vec<ProjLine>> = hesse
                .classes()
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != skip)
                .map(|(_, c)| c.clone())
                .collect();
            assert_eq!(forms_rank(&field, &sub), 2);
        }
        let q = Field::rational();
        let random: Vec<Vec<ProjLine>> = [[1, 2, 3], [4, -1, 2], [0, 5, 1], [7, 1, -3], [2, 2, 9], [1, -6, 4], [3, 0, 8], [5, 3, 1], [-2, 7, 6]]
            .chunks(3)
            .map(|ch| ch.iter().map(|&c| ProjLine::from_i64(&q, c).unwrap()).collect())
            .collect();
        assert_eq!(forms_rank(&q, &random), 3);
    }

    #[test]
    fn fermat_cube_form() {
        let field = c3();
        let net = fermat_net(3, &field).unwrap();
        // ∏(x − ζⁱy) = x³ − y³
        let form = TernaryForm::product_of_lines(&field, &net.classes()[0]);
        let v = form.coefficient_vector();
        assert_eq!(v.len(), 10);
        assert!(v[0].is_one());
        let nonzero = v.iter().filter(|c| !c.is_zero()).count();
        assert_eq!(nonzero, 2);
    }
}
