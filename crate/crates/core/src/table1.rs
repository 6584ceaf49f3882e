//! The Calabi-Yau normal forms: defining relations, point schemes and σ for
//! every row of the classification table.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::algebra::{PointScheme, QuadraticAlgebra};
use crate::classify::TypeLabel;
use crate::error::{Error, Result};
use crate::field::{same_field, FieldExt, FieldRef, NumberField, QPoly, Scalar};
use crate::form::TernaryForm;
use crate::hesse::HesseCurve;
use crate::linalg::Mat3;
use crate::parse::parse_form;
use crate::point::ProjPoint;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RowType {
    P,
    S1,
    S3,
    #[serde(rename = "S'")]
    SPrime,
    T1,
    T3,
    #[serde(rename = "T'")]
    TPrime,
    NC,
    CC,
    TL,
    WL,
    EC,
}

impl RowType {
    pub const ALL: [RowType; 12] = [
        RowType::P,
        RowType::S1,
        RowType::S3,
        RowType::SPrime,
        RowType::T1,
        RowType::T3,
        RowType::TPrime,
        RowType::NC,
        RowType::CC,
        RowType::TL,
        RowType::WL,
        RowType::EC,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            RowType::P => "P",
            RowType::S1 => "S1",
            RowType::S3 => "S3",
            RowType::SPrime => "S'",
            RowType::T1 => "T1",
            RowType::T3 => "T3",
            RowType::TPrime => "T'",
            RowType::NC => "NC",
            RowType::CC => "CC",
            RowType::TL => "TL",
            RowType::WL => "WL",
            RowType::EC => "EC",
        }
    }

    pub fn type_label(self) -> TypeLabel {
        match self {
            RowType::P => TypeLabel::P,
            RowType::S1 | RowType::S3 => TypeLabel::S,
            RowType::SPrime => TypeLabel::SPrime,
            RowType::T1 | RowType::T3 => TypeLabel::T,
            RowType::TPrime => TypeLabel::TPrime,
            RowType::NC => TypeLabel::NC,
            RowType::CC => TypeLabel::CC,
            RowType::TL => TypeLabel::TL,
            RowType::WL => TypeLabel::WL,
            RowType::EC => TypeLabel::EC,
        }
    }

    fn alpha_rule(self) -> Option<bool> {
        match self {
            // Some(true): α³ = 1 required; Some(false): α³ ∉ {0, 1}
            RowType::P | RowType::TL => Some(true),
            RowType::S1 | RowType::S3 | RowType::SPrime | RowType::NC => Some(false),
            _ => None,
        }
    }
}

impl fmt::Display for RowType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for RowType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t: String = s
            .trim()
            .replace('′', "'")
            .replace('₁', "1")
            .replace('₃', "3")
            .replace('_', "")
            .to_ascii_uppercase();
        let t = match t.as_str() {
            "SPRIME" => "S'".to_string(),
            "TPRIME" => "T'".to_string(),
            _ => t,
        };
        RowType::ALL
            .into_iter()
            .find(|r| r.as_str() == t)
            .ok_or_else(|| Error::Parse(format!("unknown table row {s:?}")))
    }
}

/// One row of the table with its parameters fixed.
#[derive(Clone, Debug)]
pub struct Table1Row {
    row: RowType,
    field: FieldRef,
    alpha: Option<Scalar>,
    ec_point: Option<[Scalar; 3]>,
}

fn relation(k: &FieldRef, terms: &[(&str, Scalar)]) -> Mat3 {
    let idx = |c: char| match c {
        'x' => 0,
        'y' => 1,
        _ => 2,
    };
    let mut m: Mat3 = std::array::from_fn(|_| std::array::from_fn(|_| k.zero()));
    for (w, c) in terms {
        let mut ch = w.chars();
        let i = idx(ch.next().unwrap());
        let j = idx(ch.next().unwrap());
        m[i][j] = &m[i][j] + c;
    }
    m
}

impl Table1Row {
    /// Validates the parameters of `row`. `alpha` is required for P, S₁, S₃,
    /// S′, NC and TL; `ec_point` for EC.
    pub fn new(
        row: RowType,
        field: &FieldRef,
        alpha: Option<Scalar>,
        ec_point: Option<[Scalar; 3]>,
    ) -> Result<Self> {
        let bad = |m: String| Err(Error::InvalidParameter(m));
        if let Some(a) = &alpha {
            if !same_field(a.field(), field) {
                return bad("α lives over a different field".into());
            }
        }
        match (row.alpha_rule(), &alpha) {
            (Some(_), None) => return bad(format!("row {row} needs a parameter α")),
            (None, Some(_)) => return bad(format!("row {row} takes no parameter α")),
            (Some(cube_is_one), Some(a)) => {
                let c = a.pow(3);
                if cube_is_one && !c.is_one() {
                    return bad(format!("row {row} needs α³ = 1, got α = {a}"));
                }
                if !cube_is_one && (c.is_zero() || c.is_one()) {
                    return bad(format!("row {row} needs α³ ∉ {{0, 1}}, got α = {a}"));
                }
            }
            (None, None) => {}
        }
        match (row, &ec_point) {
            (RowType::EC, None) => return bad("row EC needs a point p = (α, β, γ)".into()),
            (RowType::EC, Some(p)) => {
                if p.iter().any(|c| !same_field(c.field(), field)) {
                    return bad("p lives over a different field".into());
                }
                let pp = ProjPoint::new(p.clone())
                    .map_err(|_| Error::InvalidParameter("p must be a nonzero vector".into()))?;
                if pp == ProjPoint::from_ints(field, [1, -1, 0])? {
                    return bad("p = o lies in E[3]".into());
                }
                if p.iter().any(|c| c.is_zero()) {
                    return bad("λ = (α³+β³+γ³)/(αβγ) needs αβγ ≠ 0".into());
                }
                let curve = HesseCurve::new(ec_lambda(p))?;
                if curve.point(pp)?.translation_is_linear() {
                    return bad("p lies in E[3]".into());
                }
            }
            (_, Some(_)) => return bad(format!("row {row} takes no point parameter")),
            _ => {}
        }
        Ok(Table1Row {
            row,
            field: field.clone(),
            alpha,
            ec_point,
        })
    }

    pub fn row(&self) -> RowType {
        self.row
    }

    pub fn field(&self) -> &FieldRef {
        &self.field
    }

    pub fn alpha(&self) -> Option<&Scalar> {
        self.alpha.as_ref()
    }

    pub fn ec_point(&self) -> Option<&[Scalar; 3]> {
        self.ec_point.as_ref()
    }

    pub fn type_label(&self) -> TypeLabel {
        self.row.type_label()
    }

    /// The Hesse curve of the EC row.
    pub fn hesse_curve(&self) -> Option<HesseCurve> {
        self.ec_point
            .as_ref()
            .map(|p| HesseCurve::new(ec_lambda(p)).unwrap())
    }

    pub fn algebra(&self) -> QuadraticAlgebra {
        let k = &self.field;
        let one = k.one();
        let m1 = -&one;
        let int = |n: i64| k.int(n);
        let a = self.alpha.clone().unwrap_or_else(|| one.clone());
        let na = -&a;
        let third = k.rational(crate::field::rat_frac(1, 3));
        let rels: [Mat3; 3] = match self.row {
            RowType::P | RowType::S1 => [
                relation(k, &[("yz", one.clone()), ("zy", na.clone())]),
                relation(k, &[("zx", one.clone()), ("xz", na.clone())]),
                relation(k, &[("xy", one.clone()), ("yx", na.clone())]),
            ],
            RowType::S3 => [
                relation(k, &[("zy", one.clone()), ("xx", na.clone())]),
                relation(k, &[("xz", one.clone()), ("yy", na.clone())]),
                relation(k, &[("yx", one.clone()), ("zz", na.clone())]),
            ],
            RowType::SPrime => [
                relation(k, &[("yz", one.clone()), ("zy", na.clone()), ("xx", one.clone())]),
                relation(k, &[("zx", one.clone()), ("xz", na.clone())]),
                relation(k, &[("xy", one.clone()), ("yx", na.clone())]),
            ],
            RowType::T1 => [
                relation(
                    k,
                    &[("yz", one.clone()), ("zy", m1.clone()), ("xy", one.clone()), ("yx", one.clone()), ("yy", m1.clone())],
                ),
                relation(
                    k,
                    &[("zx", one.clone()), ("xz", m1.clone()), ("xx", one.clone()), ("yx", m1.clone()), ("xy", m1.clone())],
                ),
                relation(k, &[("xy", one.clone()), ("yx", m1.clone())]),
            ],
            RowType::T3 => [
                relation(
                    k,
                    &[
                        ("yz", one.clone()),
                        ("xy", m1.clone()),
                        ("yx", m1.clone()),
                        ("yy", one.clone()),
                        ("xz", m1.clone()),
                        ("zx", m1.clone()),
                        ("xx", one.clone()),
                    ],
                ),
                relation(
                    k,
                    &[
                        ("zx", one.clone()),
                        ("xx", m1.clone()),
                        ("xy", one.clone()),
                        ("yx", one.clone()),
                        ("zy", m1.clone()),
                        ("yz", m1.clone()),
                        ("yy", m1.clone()),
                    ],
                ),
                relation(k, &[("xy", one.clone()), ("xx", m1.clone()), ("yy", m1.clone())]),
            ],
            RowType::TPrime => [
                relation(
                    k,
                    &[("yz", one.clone()), ("zy", m1.clone()), ("xy", one.clone()), ("yx", one.clone())],
                ),
                relation(
                    k,
                    &[
                        ("zx", one.clone()),
                        ("xz", m1.clone()),
                        ("xx", one.clone()),
                        ("yz", m1.clone()),
                        ("zy", m1.clone()),
                        ("yy", one.clone()),
                    ],
                ),
                relation(k, &[("xy", one.clone()), ("yx", m1.clone()), ("yy", m1.clone())]),
            ],
            RowType::NC => [
                relation(k, &[("yz", one.clone()), ("zy", na.clone()), ("xx", one.clone())]),
                relation(k, &[("zx", one.clone()), ("xz", na.clone()), ("yy", one.clone())]),
                relation(k, &[("xy", one.clone()), ("yx", na.clone())]),
            ],
            RowType::CC => [
                relation(k, &[("yz", one.clone()), ("zy", m1.clone()), ("yy", one.clone()), ("xx", int(3))]),
                relation(
                    k,
                    &[
                        ("zx", one.clone()),
                        ("xz", m1.clone()),
                        ("yx", one.clone()),
                        ("xy", one.clone()),
                        ("yz", m1.clone()),
                        ("zy", m1.clone()),
                    ],
                ),
                relation(k, &[("xy", one.clone()), ("yx", m1.clone()), ("yy", m1.clone())]),
            ],
            RowType::TL => [
                relation(k, &[("yz", one.clone()), ("zy", na.clone()), ("xx", m1.clone())]),
                relation(k, &[("zx", one.clone()), ("xz", na.clone())]),
                relation(k, &[("xy", one.clone()), ("yx", na.clone())]),
            ],
            RowType::WL => [
                relation(k, &[("yz", one.clone()), ("zy", m1.clone()), ("yy", -&third)]),
                relation(
                    k,
                    &[("zx", one.clone()), ("xz", m1.clone()), ("yx", -&third), ("xy", -&third)],
                ),
                relation(k, &[("xy", one.clone()), ("yx", m1.clone())]),
            ],
            RowType::EC => {
                let [p0, p1, p2] = self.ec_point.clone().unwrap();
                [
                    relation(k, &[("yz", p0.clone()), ("zy", p1.clone()), ("xx", p2.clone())]),
                    relation(k, &[("zx", p0.clone()), ("xz", p1.clone()), ("yy", p2.clone())]),
                    relation(k, &[("xy", p0), ("yx", p1), ("zz", p2)]),
                ]
            }
        };
        QuadraticAlgebra::new(k, rels).expect("table relations are independent")
    }

    fn form(&self, s: &str) -> TernaryForm {
        parse_form(s, &self.field).unwrap()
    }

    /// The point scheme listed in the table, as a normalized cubic (or P²).
    pub fn expected_point_scheme(&self) -> PointScheme {
        let k = &self.field;
        let g = match self.row {
            RowType::P => return PointScheme::P2,
            RowType::S1 | RowType::S3 => self.form("x*y*z"),
            RowType::SPrime => {
                let a = self.alpha.as_ref().unwrap();
                let lambda = (&a.pow(3) - &k.one()) / a;
                let x = TernaryForm::var(k, 0);
                let yz = self.form("y*z");
                x.mul(&x.mul(&x).sub(&yz.scale(&lambda)))
            }
            RowType::T1 | RowType::T3 => self.form("x*y*(x - y)"),
            RowType::TPrime => self.form("y*(x^2 - y*z)"),
            RowType::NC => {
                let a = self.alpha.as_ref().unwrap();
                let lambda = (&a.pow(3) - &k.one()) / a;
                self.form("x^3 + y^3").sub(&self.form("x*y*z").scale(&lambda))
            }
            RowType::CC => self.form("x^3 - y^2*z"),
            RowType::TL => self.form("x^3"),
            // det M of the WL relations is −x·y², so the double line is y = 0
            RowType::WL => self.form("x*y^2"),
            RowType::EC => self.hesse_curve().unwrap().equation(),
        };
        PointScheme::Cubic(g.normalized())
    }

    /// σ(p) from the table formula, or `None` where the table gives no value
    /// (TL, WL, singular points of NC and CC) or `p` is off E.
    pub fn sigma(&self, p: &ProjPoint) -> Option<ProjPoint> {
        if !self.expected_point_scheme().contains(p) {
            return None;
        }
        if self.row == RowType::EC {
            let e = self.hesse_curve()?;
            let shift = e.point(ProjPoint::new(self.ec_point.clone()?).ok()?).ok()?;
            let q = e.point(p.clone()).ok()?;
            return Some(q.add(&shift).ok()?.point().clone());
        }
        for (eq, map) in self.sigma_pieces() {
            if eq.eval_point(p).is_zero() {
                let img: [Scalar; 3] = map.map(|f| f.eval_point(p));
                return ProjPoint::new(img).ok();
            }
        }
        None
    }

    /// Polynomial expressions for σ, one per component of E, each valid on
    /// its component (for P the component is all of P², given as the zero form).
    pub fn sigma_pieces(&self) -> Vec<(TernaryForm, [TernaryForm; 3])> {
        let k = &self.field;
        let f = |s: &str| self.form(s);
        let v = |i: usize| TernaryForm::var(k, i);
        let a = self.alpha.clone().unwrap_or_else(|| k.one());
        match self.row {
            RowType::P => vec![(
                TernaryForm::zero(k, 1),
                [v(0), v(1).scale(&a), v(2).scale(&a.pow(2))],
            )],
            RowType::S1 => vec![
                (v(0), [v(0), v(1), v(2).scale(&a)]),
                (v(1), [v(0).scale(&a), v(1), v(2)]),
                (v(2), [v(0), v(1).scale(&a), v(2)]),
            ],
            RowType::S3 => vec![
                (v(0), [v(2).scale(&a), v(0), v(1)]),
                (v(1), [v(2), v(0).scale(&a), v(1)]),
                (v(2), [v(2), v(0), v(1).scale(&a)]),
            ],
            RowType::SPrime => {
                let lambda = (&a.pow(3) - &k.one()) / &a;
                let conic = f("x^2").sub(&f("y*z").scale(&lambda));
                vec![
                    (v(0), [v(0), v(1), v(2).scale(&a)]),
                    (conic, [v(0), v(1).scale(&a), v(2).scale(&a.inv().unwrap())]),
                ]
            }
            RowType::T1 => vec![
                (v(0), [v(0), v(1), f("y + z")]),
                (v(1), [v(0), v(1), f("x + z")]),
                (f("x - y"), [v(0), v(1), f("-x + z")]),
            ],
            RowType::T3 => vec![
                (v(0), [v(1), v(0), f("y + z")]),
                (v(1), [v(0), v(0), f("-z")]),
                (f("x - y"), [f("x - y"), v(1), f("-z")]),
            ],
            RowType::TPrime => vec![
                (v(1), [v(0), v(1), f("x + z")]),
                (f("x^2 - y*z"), [f("x - y"), v(1), f("-2*x + y + z")]),
            ],
            RowType::NC => {
                let lambda = (&a.pow(3) - &k.one()) / &a;
                let g = f("x^3 + y^3").sub(&f("x*y*z").scale(&lambda));
                vec![(
                    g,
                    [
                        f("x*y"),
                        f("y^2").scale(&a),
                        f("-x^2").add(&f("y*z").scale(&a.pow(2))),
                    ],
                )]
            }
            RowType::CC => vec![(
                f("x^3 - y^2*z"),
                [f("x*y - y^2"), f("y^2"), f("-3*x^2 + 3*x*y - y^2 + y*z")],
            )],
            RowType::TL | RowType::WL | RowType::EC => Vec::new(),
        }
    }
}

/// `λ = (α³+β³+γ³)/(αβγ)` for `p = (α, β, γ)`.
pub fn ec_lambda(p: &[Scalar; 3]) -> Scalar {
    let num = &(&p[0].pow(3) + &p[1].pow(3)) + &p[2].pow(3);
    &num / &(&(&p[0] * &p[1]) * &p[2])
}

/// `Q(ω)` with `ω² + ω + 1 = 0`.
pub fn omega_field() -> FieldRef {
    NumberField::new("w", QPoly::from_ints(&[1, 1, 1])).unwrap()
}

/// `Q(ζ₆)` with `ζ² − ζ + 1 = 0`.
pub fn zeta6_field() -> FieldRef {
    NumberField::new("zeta", QPoly::from_ints(&[1, -1, 1])).unwrap()
}

/// The EC row at the 2-torsion point `s = (r, r, 1)`, `2r³ − r² + 1 = 0`, on the λ = 1 curve.
pub fn ec_two_torsion_row() -> Table1Row {
    let k = NumberField::new("r", QPoly::new(vec![
        crate::field::rat_frac(1, 2),
        crate::field::rat(0),
        crate::field::rat_frac(-1, 2),
        crate::field::rat(1),
    ]))
    .unwrap();
    let r = k.generator();
    Table1Row::new(RowType::EC, &k, None, Some([r.clone(), r, k.one()])).unwrap()
}

/// The fixed corpus: every row, with α ∈ {ω, ζ₆, 2} where the row takes α.
pub fn standard_corpus() -> Vec<(String, Table1Row)> {
    let q = NumberField::rationals();
    let w = omega_field();
    let z6 = zeta6_field();
    let mut out = Vec::new();
    let mut push = |name: String, row: Table1Row| out.push((name, row));
    push("P(α=ω)".into(), Table1Row::new(RowType::P, &w, Some(w.generator()), None).unwrap());
    for row in [RowType::S1, RowType::S3, RowType::SPrime, RowType::NC] {
        push(
            format!("{row}(α=ζ₆)"),
            Table1Row::new(row, &z6, Some(z6.generator()), None).unwrap(),
        );
        push(
            format!("{row}(α=2)"),
            Table1Row::new(row, &q, Some(q.int(2)), None).unwrap(),
        );
    }
    for row in [RowType::T1, RowType::T3, RowType::TPrime, RowType::CC, RowType::WL] {
        push(row.to_string(), Table1Row::new(row, &q, None, None).unwrap());
    }
    push("TL(α=ω)".into(), Table1Row::new(RowType::TL, &w, Some(w.generator()), None).unwrap());
    push("EC(p=s)".into(), ec_two_torsion_row());
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s1_relations() {
        let q = NumberField::rationals();
        let r = Table1Row::new(RowType::S1, &q, Some(q.int(2)), None).unwrap();
        assert_eq!(
            r.algebra().relation_strings(),
            ["y*z - 2*z*y", "-2*x*z + z*x", "x*y - 2*y*x"]
        );
        assert!(Table1Row::new(RowType::S1, &q, Some(q.one()), None).is_err());
        let tl = Table1Row::new(RowType::TL, &q, Some(q.one()), None).unwrap();
        let expect = QuadraticAlgebra::from_relations(&q, &["yz - zy - x^2", "zx - xz", "xy - yx"]).unwrap();
        assert_eq!(tl.algebra(), expect);
    }

    #[test]
    fn ec_parameter_checks() {
        let q = NumberField::rationals();
        let o = [q.one(), q.int(-1), q.zero()];
        let err = Table1Row::new(RowType::EC, &q, None, Some(o)).unwrap_err();
        assert!(err.to_string().contains("E[3]"));
        assert!(Table1Row::new(RowType::EC, &q, None, Some([q.one(), q.int(2), q.int(3)])).is_ok());
        let s = ec_two_torsion_row();
        assert!(s.hesse_curve().unwrap().lambda().is_one());
    }

    #[test]
    fn point_schemes_match_table() {
        for (name, row) in standard_corpus() {
            assert_eq!(row.algebra().point_scheme(), row.expected_point_scheme(), "{name}");
        }
    }

    #[test]
    fn pieces_satisfy_graph_symbolically() {
        for (name, row) in standard_corpus() {
            let a = row.algebra();
            for (eq, map) in row.sigma_pieces() {
                if eq.is_zero() {
                    continue;
                }
                let red = a.verify_g1_symbolic(&map, &eq).unwrap();
                assert!(red.iter().all(|r| r.is_zero()), "{name} on {eq}: {red:?}");
            }
        }
    }

    #[test]
    fn ec_sigma_is_translation_by_p() {
        let q = NumberField::rationals();
        let row = Table1Row::new(RowType::EC, &q, None, Some([q.one(), q.int(2), q.int(3)])).unwrap();
        let a = row.algebra();
        let e = row.hesse_curve().unwrap();
        let p = e.point(ProjPoint::from_ints(&q, [1, 2, 3]).unwrap()).unwrap();
        let mut x = e.point(ProjPoint::from_ints(&q, [0, 1, -1]).unwrap()).unwrap();
        for _ in 0..4 {
            let s = a.sigma_eval(x.point()).unwrap().unwrap();
            assert_eq!(Some(s.clone()), row.sigma(x.point()));
            assert_eq!(&s, x.add(&p).unwrap().point());
            x = e.point(s).unwrap();
        }
    }

    #[test]
    fn parse_row_names() {
        assert_eq!("S₁".parse::<RowType>().unwrap(), RowType::S1);
        assert_eq!("s'".parse::<RowType>().unwrap(), RowType::SPrime);
        assert_eq!("T_3".parse::<RowType>().unwrap(), RowType::T3);
        assert_eq!("Tprime".parse::<RowType>().unwrap(), RowType::TPrime);
    }
}

