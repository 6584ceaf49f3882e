//! Quadratic algebras `k⟨x,y,z⟩/(f₁,f₂,f₃)`, their point schemes and the
//! automorphism σ read off from the multilinearized relations.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{same_field, Embed, Embedding, FieldExt, FieldRef, Scalar};
use crate::form::{fmt_sum, LinearForm, TernaryForm};
use crate::linalg::{cross, det, is_zero_vec, rank, Mat3};
use crate::parse::parse_relation;
use crate::point::ProjPoint;

const VARS: [&str; 3] = ["x", "y", "z"];

/// Three quadratic relations; `rels[k][i][j]` is the coefficient of `x_i x_j` in `f_k`.
#[derive(Clone, PartialEq, Eq)]
pub struct QuadraticAlgebra {
    field: FieldRef,
    rels: [Mat3; 3],
}

impl fmt::Debug for QuadraticAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.relation_strings()).finish()
    }
}

/// Either all of P² or the cubic `det M = 0` (normalized).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PointScheme {
    P2,
    Cubic(TernaryForm),
}

impl PointScheme {
    pub fn cubic(&self) -> Option<&TernaryForm> {
        match self {
            PointScheme::P2 => None,
            PointScheme::Cubic(g) => Some(g),
        }
    }

    pub fn contains(&self, p: &ProjPoint) -> bool {
        match self {
            PointScheme::P2 => true,
            PointScheme::Cubic(g) => g.eval_point(p).is_zero(),
        }
    }
}

impl fmt::Display for PointScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PointScheme::P2 => f.write_str("P2"),
            PointScheme::Cubic(g) => write!(f, "{g}"),
        }
    }
}

/// Outcome of checking `f_k(p, σ(p)) = 0` at one sample.
#[derive(Clone, Debug)]
pub struct GraphWitness {
    pub point: ProjPoint,
    pub sigma: Option<ProjPoint>,
    pub values: Option<[Scalar; 3]>,
}

#[derive(Clone, Debug)]
pub struct GraphCheck {
    pub holds: bool,
    pub witnesses: Vec<GraphWitness>,
}

impl QuadraticAlgebra {
    pub fn new(field: &FieldRef, rels: [Mat3; 3]) -> Result<Self> {
        for m in &rels {
            for c in m.iter().flatten() {
                if !same_field(c.field(), field) {
                    return Err(Error::InvalidInput(
                        "relation coefficients live over a different field".into(),
                    ));
                }
            }
        }
        let rows: Vec<Vec<Scalar>> = rels
            .iter()
            .map(|m| m.iter().flatten().cloned().collect())
            .collect();
        if rank(&rows, 9) != 3 {
            return Err(Error::InvalidInput(
                "the three relations are linearly dependent".into(),
            ));
        }
        Ok(QuadraticAlgebra {
            field: field.clone(),
            rels,
        })
    }

    /// Parses three relations written in the free algebra, e.g. `"y*z - 2*z*y"`.
    pub fn from_relations<S: AsRef<str>>(field: &FieldRef, rels: &[S]) -> Result<Self> {
        if rels.len() != 3 {
            return Err(Error::InvalidInput(format!(
                "expected 3 relations, got {}",
                rels.len()
            )));
        }
        let m: Vec<Mat3> = rels
            .iter()
            .map(|s| parse_relation(s.as_ref(), field))
            .collect::<Result<_>>()?;
        let [a, b, c]: [Mat3; 3] = m.try_into().unwrap();
        QuadraticAlgebra::new(field, [a, b, c])
    }

    pub fn field(&self) -> &FieldRef {
        &self.field
    }

    pub fn relations(&self) -> &[Mat3; 3] {
        &self.rels
    }

    pub fn relation_string(&self, k: usize) -> String {
        let m = &self.rels[k];
        fmt_sum(
            (0..9).map(|w| (format!("{}*{}", VARS[w / 3], VARS[w % 3]), &m[w / 3][w % 3])),
        )
    }

    pub fn relation_strings(&self) -> [String; 3] {
        std::array::from_fn(|k| self.relation_string(k))
    }

    /// `f_k(p, q) = Σ C⁽ᵏ⁾_{ij} p_i q_j`.
    pub fn bilinear(&self, k: usize, p: &[Scalar; 3], q: &[Scalar; 3]) -> Scalar {
        let mut acc = self.field.zero();
        for i in 0..3 {
            if p[i].is_zero() {
                continue;
            }
            for j in 0..3 {
                acc = &acc + &(&(&self.rels[k][i][j] * &p[i]) * &q[j]);
            }
        }
        acc
    }

    /// `M(p)` with `f_k(p, q) = (M(p)·q)_k`.
    pub fn matrix_at(&self, p: &[Scalar; 3]) -> Mat3 {
        std::array::from_fn(|k| {
            std::array::from_fn(|j| {
                let mut acc = self.field.zero();
                for i in 0..3 {
                    acc = &acc + &(&self.rels[k][i][j] * &p[i]);
                }
                acc
            })
        })
    }

    /// `N(q)` with `f_k(p, q) = (N(q)·p)_k`.
    pub fn left_matrix_at(&self, q: &[Scalar; 3]) -> Mat3 {
        std::array::from_fn(|k| {
            std::array::from_fn(|i| {
                let mut acc = self.field.zero();
                for j in 0..3 {
                    acc = &acc + &(&self.rels[k][i][j] * &q[j]);
                }
                acc
            })
        })
    }

    /// The matrix of linear forms `M(p)`.
    pub fn multilinearize(&self) -> [[LinearForm; 3]; 3] {
        std::array::from_fn(|k| {
            std::array::from_fn(|j| {
                LinearForm::new(
                    self.rels[k][0][j].clone(),
                    self.rels[k][1][j].clone(),
                    self.rels[k][2][j].clone(),
                )
            })
        })
    }

    /// `det M(p)` as a cubic form (possibly zero).
    pub fn det_form(&self) -> TernaryForm {
        let m = self.multilinearize().map(|row| row.map(|l| l.to_form()));
        let minor = |a: &TernaryForm, b: &TernaryForm, c: &TernaryForm, d: &TernaryForm| {
            a.mul(d).sub(&b.mul(c))
        };
        let t0 = m[0][0].mul(&minor(&m[1][1], &m[1][2], &m[2][1], &m[2][2]));
        let t1 = m[0][1].mul(&minor(&m[1][0], &m[1][2], &m[2][0], &m[2][2]));
        let t2 = m[0][2].mul(&minor(&m[1][0], &m[1][1], &m[2][0], &m[2][1]));
        t0.sub(&t1).add(&t2)
    }

    pub fn point_scheme(&self) -> PointScheme {
        let g = self.det_form();
        if g.is_zero() {
            PointScheme::P2
        } else {
            PointScheme::Cubic(g.normalized())
        }
    }

    fn check_point(&self, p: &ProjPoint) -> Result<()> {
        if !same_field(p.field(), &self.field) {
            return Err(Error::InvalidInput(
                "point and algebra live over different fields".into(),
            ));
        }
        Ok(())
    }

    /// σ(p): the kernel of `M(p)` when it has rank 2, `None` when the rank is at most 1.
    pub fn sigma_eval(&self, p: &ProjPoint) -> Result<Option<ProjPoint>> {
        self.check_point(p)?;
        let m = self.matrix_at(p.coords());
        if !det(&m).is_zero() {
            return Err(Error::NotOnPointScheme(p.to_string()));
        }
        Ok(rank_two_kernel(&m))
    }

    /// σ⁻¹(q): the left kernel, i.e. the unique `p` with `f_k(p, q) = 0` for all k.
    pub fn sigma_inverse_eval(&self, q: &ProjPoint) -> Result<Option<ProjPoint>> {
        self.check_point(q)?;
        let n = self.left_matrix_at(q.coords());
        if !det(&n).is_zero() {
            return Err(Error::NotOnPointScheme(q.to_string()));
        }
        Ok(rank_two_kernel(&n))
    }

    /// `σⁱ(p)`, or `None` if some iterate lands where σ is not determined.
    pub fn sigma_iter(&self, p: &ProjPoint, i: u64) -> Result<Option<ProjPoint>> {
        let mut cur = p.clone();
        for _ in 0..i {
            match self.sigma_eval(&cur)? {
                Some(q) => cur = q,
                None => return Ok(None),
            }
        }
        Ok(Some(cur))
    }

    /// Checks `f_k(p, σ(p)) = 0` at every sample where σ is determined.
    pub fn verify_g1_graph(&self, samples: &[ProjPoint]) -> Result<GraphCheck> {
        let mut holds = true;
        let mut witnesses = Vec::with_capacity(samples.len());
        for p in samples {
            let sigma = self.sigma_eval(p)?;
            let values = sigma.as_ref().map(|q| {
                std::array::from_fn(|k| self.bilinear(k, p.coords(), q.coords()))
            });
            if let Some(v) = &values {
                holds &= v.iter().all(|c| c.is_zero());
            }
            witnesses.push(GraphWitness {
                point: p.clone(),
                sigma,
                values,
            });
        }
        Ok(GraphCheck { holds, witnesses })
    }

    /// `f_k(p, σ(p))` for a polynomial σ, reduced modulo `g`; all zero means
    /// the graph condition holds on the whole of `V(g)`.
    pub fn verify_g1_symbolic(
        &self,
        sigma: &[TernaryForm; 3],
        g: &TernaryForm,
    ) -> Result<[TernaryForm; 3]> {
        let d = sigma[0].degree();
        if sigma.iter().any(|s| s.degree() != d || !same_field(s.field(), &self.field)) {
            return Err(Error::InvalidInput(
                "σ must be given by forms of one degree over the algebra's field".into(),
            ));
        }
        if g.is_zero() {
            return Err(Error::InvalidInput("reduction modulo the zero form".into()));
        }
        let vars: [TernaryForm; 3] = std::array::from_fn(|i| TernaryForm::var(&self.field, i));
        Ok(std::array::from_fn(|k| {
            let mut acc = TernaryForm::zero(&self.field, d + 1);
            for i in 0..3 {
                for j in 0..3 {
                    let c = &self.rels[k][i][j];
                    if !c.is_zero() {
                        acc = acc.add(&vars[i].mul(&sigma[j]).scale(c));
                    }
                }
            }
            acc.rem(g)
        }))
    }

    /// Basis of the relation space as 9-vectors, for change-of-basis comparisons.
    pub fn relation_vectors(&self) -> Vec<Vec<Scalar>> {
        self.rels
            .iter()
            .map(|m| m.iter().flatten().cloned().collect())
            .collect()
    }

    /// True iff both algebras have the same span of relations.
    pub fn same_relations(&self, other: &QuadraticAlgebra) -> bool {
        let mut rows = self.relation_vectors();
        rows.extend(other.relation_vectors());
        same_field(&self.field, &other.field) && rank(&rows, 9) == 3
    }
}

/// Kernel generator of a rank-2 matrix via cross products of rows.
fn rank_two_kernel(m: &Mat3) -> Option<ProjPoint> {
    for (a, b) in [(0, 1), (0, 2), (1, 2)] {
        let c = cross(&m[a], &m[b]);
        if !is_zero_vec(&c) {
            return Some(ProjPoint::new(c).unwrap());
        }
    }
    None
}

impl Embed for QuadraticAlgebra {
    fn embed(&self, e: &Embedding) -> Self {
        QuadraticAlgebra {
            field: e.target.clone(),
            rels: self.rels.embed(e),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::NumberField;
    use crate::parse::parse_form;

    fn q() -> FieldRef {
        NumberField::rationals()
    }

    fn alg(rels: [&str; 3]) -> QuadraticAlgebra {
        QuadraticAlgebra::from_relations(&q(), &rels).unwrap()
    }

    fn pt(v: [i64; 3]) -> ProjPoint {
        ProjPoint::from_ints(&q(), v).unwrap()
    }

    #[test]
    fn s1_matrix_and_det() {
        let a = alg(["y*z - 2*z*y", "z*x - 2*x*z", "x*y - 2*y*x"]);
        let m = a.multilinearize();
        assert_eq!(m[0][1].to_string(), "-2*z");
        assert_eq!(m[0][2].to_string(), "y");
        assert_eq!(m[1][0].to_string(), "z");
        assert_eq!(m[2][0].to_string(), "-2*y");
        assert!(m[0][0].is_zero());
        assert_eq!(a.det_form(), parse_form("-7*x*y*z", &q()).unwrap());
        let s = a.sigma_eval(&pt([1, 1, 0])).unwrap().unwrap();
        assert_eq!(s, pt([1, 2, 0]));
        assert!(matches!(
            a.sigma_eval(&pt([1, 1, 1])),
            Err(Error::NotOnPointScheme(_))
        ));
        let chk = a.verify_g1_graph(&[pt([0, 1, 1])]).unwrap();
        assert!(chk.holds);
        assert_eq!(chk.witnesses[0].sigma, Some(pt([0, 1, 2])));
        assert_eq!(a.sigma_inverse_eval(&pt([0, 1, 2])).unwrap(), Some(pt([0, 1, 1])));
        assert_eq!(a.relation_string(0), "y*z - 2*z*y");
    }

    #[test]
    fn type_p_is_plane() {
        let a = alg(["y*z - z*y", "z*x - x*z", "x*y - y*x"]);
        assert_eq!(a.point_scheme(), PointScheme::P2);
        assert_eq!(a.sigma_eval(&pt([1, 2, 3])).unwrap(), Some(pt([1, 2, 3])));
        assert!(a.verify_g1_graph(&[]).unwrap().holds);
    }

    #[test]
    fn cc_pointwise_and_symbolic() {
        let a = alg([
            "y*z - z*y + y^2 + 3*x^2",
            "z*x - x*z + y*x + x*y - y*z - z*y",
            "x*y - y*x - y^2",
        ]);
        let g = parse_form("x^3 - y^2*z", &q()).unwrap();
        assert_eq!(a.point_scheme(), PointScheme::Cubic(g.clone()));
        assert_eq!(a.sigma_eval(&pt([1, 1, 1])).unwrap(), Some(pt([0, 1, 0])));
        assert_eq!(a.sigma_eval(&pt([0, 0, 1])).unwrap(), Some(pt([0, 0, 1])));
        let k = q();
        let sigma = [
            parse_form("x*y - y^2", &k).unwrap(),
            parse_form("y^2", &k).unwrap(),
            parse_form("-3*x^2 + 3*x*y - y^2 + y*z", &k).unwrap(),
        ];
        let red = a.verify_g1_symbolic(&sigma, &g).unwrap();
        assert!(red.iter().all(|r| r.is_zero()));
    }

    #[test]
    fn dependent_relations_rejected() {
        let r = QuadraticAlgebra::from_relations(&q(), &["x*y", "2*x*y", "y*z"]);
        assert!(r.is_err());
        let r = QuadraticAlgebra::from_relations(&q(), &["x*y", "y*z"]);
        assert!(r.is_err());
    }
}
