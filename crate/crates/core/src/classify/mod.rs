//! Classification of plane cubics into the ten point-scheme types.

mod param;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{
    roots_in_field, Embed, Embedding, FieldExt, FieldRef, KPoly, Scalar, DEFAULT_DEGREE_CAP,
};
use crate::form::{form_gcd, LinearForm, TernaryForm};
use crate::linalg::{cross, inverse, Mat3};
use crate::point::ProjPoint;
use crate::solve::{binary_form_roots, common_zeros, Solutions};

pub use param::{
    conic_parametrization, line_parametrization, singular_cubic_parametrization, Parametrization,
};
pub(crate) use param::frame;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TypeLabel {
    P,
    S,
    #[serde(rename = "S'")]
    SPrime,
    T,
    #[serde(rename = "T'")]
    TPrime,
    NC,
    CC,
    TL,
    WL,
    EC,
}

impl TypeLabel {
    pub const ALL: [TypeLabel; 10] = [
        TypeLabel::P,
        TypeLabel::S,
        TypeLabel::SPrime,
        TypeLabel::T,
        TypeLabel::TPrime,
        TypeLabel::NC,
        TypeLabel::CC,
        TypeLabel::TL,
        TypeLabel::WL,
        TypeLabel::EC,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            TypeLabel::P => "P",
            TypeLabel::S => "S",
            TypeLabel::SPrime => "S'",
            TypeLabel::T => "T",
            TypeLabel::TPrime => "T'",
            TypeLabel::NC => "NC",
            TypeLabel::CC => "CC",
            TypeLabel::TL => "TL",
            TypeLabel::WL => "WL",
            TypeLabel::EC => "EC",
        }
    }

    /// Types whose cubic has vanishing second Hessian (P has no cubic but belongs here too).
    pub fn second_hessian_vanishes(self) -> bool {
        matches!(
            self,
            TypeLabel::P
                | TypeLabel::T
                | TypeLabel::TPrime
                | TypeLabel::CC
                | TypeLabel::TL
                | TypeLabel::WL
        )
    }

    pub fn is_reduced(self) -> bool {
        !matches!(self, TypeLabel::TL | TypeLabel::WL)
    }
}

impl fmt::Display for TypeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TypeLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().replace('′', "'");
        TypeLabel::ALL
            .into_iter()
            .find(|l| l.as_str().eq_ignore_ascii_case(&t))
            .ok_or_else(|| Error::Parse(format!("unknown type label {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ComponentKind {
    Line,
    Conic,
    Cubic,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveComponent {
    pub equation: TernaryForm,
    pub kind: ComponentKind,
    pub multiplicity: u32,
    pub parametrization: Option<Parametrization>,
}

impl Embed for CurveComponent {
    fn embed(&self, e: &Embedding) -> Self {
        CurveComponent {
            equation: self.equation.embed(e),
            kind: self.kind,
            multiplicity: self.multiplicity,
            parametrization: self.parametrization.embed(e),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConeKind {
    DistinctPair,
    RepeatedLine,
    ThreeLines,
}

/// Lowest-order part of the cubic at a singular point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TangentCone {
    pub kind: ConeKind,
    /// Product of the tangent lines, as a form in x, y, z.
    pub form: TernaryForm,
    /// The tangent lines that are defined over the classification field.
    pub lines: Vec<LinearForm>,
}

impl Embed for TangentCone {
    fn embed(&self, e: &Embedding) -> Self {
        TangentCone {
            kind: self.kind,
            form: self.form.embed(e),
            lines: self.lines.embed(e),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingularPoint {
    pub point: ProjPoint,
    pub multiplicity: u32,
    pub tangent_cone: TangentCone,
}

impl Embed for SingularPoint {
    fn embed(&self, e: &Embedding) -> Self {
        SingularPoint {
            point: self.point.embed(e),
            multiplicity: self.multiplicity,
            tangent_cone: self.tangent_cone.embed(e),
        }
    }
}

#[derive(Clone, Debug)]
pub enum SingularLocus {
    /// The partials share this common factor (non-reduced cubic).
    Curve(TernaryForm),
    /// Isolated singular points, over `embedding.target`.
    Points {
        embedding: Embedding,
        points: Vec<SingularPoint>,
    },
}

/// Result of classifying a cubic. Everything lives over `field`, which
/// extends the cubic's field through `embedding`.
#[derive(Clone, Debug)]
pub struct CubicClassification {
    pub type_label: TypeLabel,
    pub field: FieldRef,
    pub embedding: Embedding,
    pub cubic: TernaryForm,
    pub components: Vec<CurveComponent>,
    pub singular_points: Vec<SingularPoint>,
    pub hesse_lambda: Option<Scalar>,
}

impl Embed for CubicClassification {
    fn embed(&self, e: &Embedding) -> Self {
        CubicClassification {
            type_label: self.type_label,
            field: e.target.clone(),
            embedding: self.embedding.then(e),
            cubic: self.cubic.embed(e),
            components: self.components.embed(e),
            singular_points: self.singular_points.embed(e),
            hesse_lambda: self.hesse_lambda.embed(e),
        }
    }
}

impl CubicClassification {
    /// Product of the components raised to their multiplicities.
    pub fn component_product(&self) -> TernaryForm {
        let mut acc = TernaryForm::constant(self.field.one());
        for c in &self.components {
            acc = acc.mul(&c.equation.pow(c.multiplicity));
        }
        acc
    }

    /// Index of a component containing `p`.
    pub fn component_of(&self, p: &ProjPoint) -> Option<usize> {
        self.components
            .iter()
            .position(|c| c.equation.eval_point(p).is_zero())
    }

    pub fn is_singular_point(&self, p: &ProjPoint) -> bool {
        self.singular_points.iter().any(|s| &s.point == p)
    }
}

fn check_cubic(g: &TernaryForm) -> Result<()> {
    if g.is_zero() {
        return Err(Error::InvalidInput("the zero form is not a cubic".into()));
    }
    if g.degree() != 3 {
        return Err(Error::InvalidInput(format!(
            "expected a cubic, got a form of degree {}",
            g.degree()
        )));
    }
    Ok(())
}

/// Coefficients `c_a` of `u1^a u2^(m-a)` in the part of `h` of order `m` at `(1:0:0)`.
fn local_piece(h: &TernaryForm, m: u32) -> Vec<Scalar> {
    let k = h.field().clone();
    let mut v = vec![k.zero(); m as usize + 1];
    for (e, c) in h.terms() {
        if e[0] + m == h.degree() {
            v[e[1] as usize] = c.clone();
        }
    }
    v
}

/// The linear form vanishing at local direction `(ru : rv)`, in original coordinates.
fn local_line(cinv: &Mat3, ru: &Scalar, rv: &Scalar) -> LinearForm {
    let v: [Scalar; 3] =
        std::array::from_fn(|i| &(rv * &cinv[i][1]) - &(ru * &cinv[i][2]));
    LinearForm { coeffs: v }
}

fn local_form(cinv: &Mat3, piece: &[Scalar]) -> TernaryForm {
    let k = piece[0].field().clone();
    let l1 = LinearForm::new(cinv[0][1].clone(), cinv[1][1].clone(), cinv[2][1].clone()).to_form();
    let l2 = LinearForm::new(cinv[0][2].clone(), cinv[1][2].clone(), cinv[2][2].clone()).to_form();
    let m = piece.len() as u32 - 1;
    let mut acc = TernaryForm::zero(&k, m);
    for (a, c) in piece.iter().enumerate() {
        if !c.is_zero() {
            acc = acc.add(&l1.pow(a as u32).mul(&l2.pow(m - a as u32)).scale(c));
        }
    }
    acc
}

/// Roots `(u : v)` of a binary form that lie in its field.
fn rational_binary_roots(piece: &[Scalar]) -> Vec<[Scalar; 2]> {
    let k = piece[0].field().clone();
    let p = KPoly::new(&k, piece.to_vec());
    let mut out = Vec::new();
    if p.degree().unwrap_or(0) + 1 < piece.len() {
        out.push([k.one(), k.zero()]);
    }
    for r in roots_in_field(&p) {
        out.push([r, k.one()]);
    }
    out
}

/// Multiplicity and tangent cone of `g` at `p`.
pub fn local_data(g: &TernaryForm, p: &ProjPoint) -> Result<SingularPoint> {
    let c = frame(p);
    let cinv = inverse(&c).unwrap();
    let h = g.compose(&c);
    let m = (0..=3)
        .find(|&m| local_piece(&h, m).iter().any(|c| !c.is_zero()))
        .unwrap();
    if m < 2 {
        return Err(Error::Precondition(format!("{p} is not a singular point")));
    }
    let piece = local_piece(&h, m);
    let form = local_form(&cinv, &piece);
    let lines: Vec<LinearForm> = rational_binary_roots(&piece)
        .iter()
        .map(|[u, v]| local_line(&cinv, u, v))
        .collect();
    let kind = if m == 3 {
        ConeKind::ThreeLines
    } else {
        let disc = &(&piece[1] * &piece[1]) - &(&(&piece[0] * &piece[2]) * &h.field().int(4));
        if disc.is_zero() {
            ConeKind::RepeatedLine
        } else {
            ConeKind::DistinctPair
        }
    };
    Ok(SingularPoint {
        point: p.clone(),
        multiplicity: m,
        tangent_cone: TangentCone { kind, form, lines },
    })
}

fn nonzero_partials(g: &TernaryForm) -> Vec<TernaryForm> {
    g.gradient().into_iter().filter(|p| !p.is_zero()).collect()
}

pub fn singular_locus(g: &TernaryForm) -> Result<SingularLocus> {
    singular_locus_with_cap(g, DEFAULT_DEGREE_CAP)
}

pub fn singular_locus_with_cap(g: &TernaryForm, cap: usize) -> Result<SingularLocus> {
    check_cubic(g)?;
    let parts = nonzero_partials(g);
    let mut common = parts[0].clone();
    for p in &parts[1..] {
        common = form_gcd(&common, p);
    }
    if common.degree() > 0 {
        return Ok(SingularLocus::Curve(common));
    }
    let Solutions {
        embedding, points, ..
    } = common_zeros(&parts, cap)?;
    let ge = g.embed(&embedding);
    let mut pts = points
        .iter()
        .map(|p| local_data(&ge, p))
        .collect::<Result<Vec<_>>>()?;
    pts.sort_by_key(|s| s.point.to_string());
    Ok(SingularLocus::Points {
        embedding,
        points: pts,
    })
}

/// Points of `V(g, H(g))`; for a smooth cubic these are its nine inflection points.
pub fn inflection_points(g: &TernaryForm) -> Result<Solutions> {
    match singular_locus(g)? {
        SingularLocus::Points { points, .. } if points.is_empty() => {}
        _ => {
            return Err(Error::Precondition(
                "inflection points are only computed for smooth cubics".into(),
            ))
        }
    }
    common_zeros(&[g.clone(), g.hessian()?], DEFAULT_DEGREE_CAP)
}

fn line_component(l: &LinearForm, multiplicity: u32) -> CurveComponent {
    CurveComponent {
        equation: l.to_form().normalized(),
        kind: ComponentKind::Line,
        multiplicity,
        parametrization: Some(line_parametrization(&l.coeffs)),
    }
}

fn sort_components(cs: &mut [CurveComponent]) {
    cs.sort_by(|a, b| {
        let la = a.equation.leading().map(|(e, _)| *e);
        let lb = b.equation.leading().map(|(e, _)| *e);
        a.equation
            .degree()
            .cmp(&b.equation.degree())
            .then(lb.cmp(&la))
            .then_with(|| a.equation.to_string().cmp(&b.equation.to_string()))
    });
}

/// λ when `g ∝ x³ + y³ + z³ − λxyz`.
fn hesse_lambda(g: &TernaryForm) -> Option<Scalar> {
    let n = g.normalized();
    let k = n.field().clone();
    let allowed = [[3, 0, 0], [0, 3, 0], [0, 0, 3], [1, 1, 1]];
    if n.terms().any(|(e, _)| !allowed.contains(e)) {
        return None;
    }
    if (0..3).any(|i| {
        let mut e = [0; 3];
        e[i] = 3;
        !n.coeff(&e).is_one()
    }) {
        return None;
    }
    let l = -n.coeff(&[1, 1, 1]);
    (l.pow(3) != k.int(27)).then_some(l)
}

pub fn classify_cubic(g: &TernaryForm) -> Result<CubicClassification> {
    classify_cubic_with_cap(g, DEFAULT_DEGREE_CAP)
}

pub fn classify_cubic_with_cap(g: &TernaryForm, cap: usize) -> Result<CubicClassification> {
    check_cubic(g)?;
    let k = g.field().clone();
    let g = g.normalized();
    let (rad, reduced) = g.squarefree_radical()?;
    if !reduced {
        let l = LinearForm::from_form(&if rad.degree() == 1 {
            rad.clone()
        } else {
            g.div_exact(&rad).unwrap()
        })
        .ok_or_else(|| Error::Invariant("non-reduced cubic without a repeated line".into()))?;
        let (label, components) = if rad.degree() == 1 {
            (TypeLabel::TL, vec![line_component(&l, 3)])
        } else {
            let other = LinearForm::from_form(&rad.div_exact(&l.to_form()).unwrap())
                .ok_or_else(|| Error::Invariant("radical is not a pair of lines".into()))?;
            (
                TypeLabel::WL,
                vec![line_component(&l, 2), line_component(&other, 1)],
            )
        };
        return Ok(CubicClassification {
            type_label: label,
            field: k.clone(),
            embedding: Embedding::identity(&k),
            cubic: g,
            components,
            singular_points: Vec::new(),
            hesse_lambda: None,
        });
    }

    let SingularLocus::Points { embedding, points } = singular_locus_with_cap(&g, cap)? else {
        return Err(Error::Invariant(
            "reduced cubic with a one-dimensional singular locus".into(),
        ));
    };
    let mut cls = CubicClassification {
        type_label: TypeLabel::EC,
        field: embedding.target.clone(),
        cubic: g.embed(&embedding),
        embedding,
        components: Vec::new(),
        singular_points: points,
        hesse_lambda: None,
    };
    let g = cls.cubic.clone();
    let pts: Vec<ProjPoint> = cls.singular_points.iter().map(|s| s.point.clone()).collect();
    match pts.len() {
        0 => {
            cls.hesse_lambda = hesse_lambda(&g);
            cls.components = vec![CurveComponent {
                equation: g.clone(),
                kind: ComponentKind::Cubic,
                multiplicity: 1,
                parametrization: None,
            }];
        }
        3 => {
            cls.type_label = TypeLabel::S;
            let mut rest = g.clone();
            for (a, b) in [(0, 1), (0, 2), (1, 2)] {
                let l = LinearForm {
                    coeffs: cross(pts[a].coords(), pts[b].coords()),
                };
                rest = rest.divide_by_linear(&l)?.ok_or_else(|| {
                    Error::Invariant("triangle side does not divide the cubic".into())
                })?;
                cls.components.push(line_component(&l, 1));
            }
        }
        2 => {
            cls.type_label = TypeLabel::SPrime;
            let l = LinearForm {
                coeffs: cross(pts[0].coords(), pts[1].coords()),
            };
            let conic = g
                .divide_by_linear(&l)?
                .ok_or_else(|| Error::Invariant("secant line does not divide the cubic".into()))?
                .normalized();
            cls.components.push(line_component(&l, 1));
            cls.components.push(CurveComponent {
                parametrization: Some(conic_parametrization(&conic, &pts[0])),
                equation: conic,
                kind: ComponentKind::Conic,
                multiplicity: 1,
            });
        }
        1 => {
            let sp = cls.singular_points[0].clone();
            let p = &sp.point;
            if sp.multiplicity == 3 {
                cls.type_label = TypeLabel::T;
                let c = frame(p);
                let cinv = inverse(&c).unwrap();
                let piece = local_piece(&g.compose(&c), 3);
                let (emb, roots) = binary_form_roots(&piece, cap)?;
                if roots.len() != 3 {
                    return Err(Error::Invariant("reduced cubic with a repeated line".into()));
                }
                cls = cls.embed(&emb);
                let cinv = cinv.embed(&emb);
                let lines: Vec<LinearForm> =
                    roots.iter().map(|([u, v], _)| local_line(&cinv, u, v)).collect();
                cls.singular_points[0].tangent_cone.lines = lines.clone();
                cls.components = lines.iter().map(|l| line_component(l, 1)).collect();
            } else if sp.tangent_cone.kind == ConeKind::RepeatedLine {
                let l = sp.tangent_cone.lines[0].clone();
                match g.divide_by_linear(&l)? {
                    Some(conic) => {
                        cls.type_label = TypeLabel::TPrime;
                        let conic = conic.normalized();
                        cls.components.push(line_component(&l, 1));
                        cls.components.push(CurveComponent {
                            parametrization: Some(conic_parametrization(&conic, p)),
                            equation: conic,
                            kind: ComponentKind::Conic,
                            multiplicity: 1,
                        });
                    }
                    None => {
                        cls.type_label = TypeLabel::CC;
                        cls.components.push(CurveComponent {
                            equation: g.clone(),
                            kind: ComponentKind::Cubic,
                            multiplicity: 1,
                            parametrization: Some(singular_cubic_parametrization(&g, p)),
                        });
                    }
                }
            } else {
                cls.type_label = TypeLabel::NC;
                cls.components.push(CurveComponent {
                    equation: g.clone(),
                    kind: ComponentKind::Cubic,
                    multiplicity: 1,
                    parametrization: Some(singular_cubic_parametrization(&g, p)),
                });
            }
        }
        n => {
            return Err(Error::Invariant(format!(
                "a reduced cubic has at most 3 singular points, found {n}"
            )))
        }
    }
    sort_components(&mut cls.components);
    if !cls.component_product().is_proportional(&cls.cubic) {
        return Err(Error::Invariant(
            "components do not multiply back to the cubic".into(),
        ));
    }
    Ok(cls)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::NumberField;
    use crate::parse::parse_form;

    fn f(s: &str) -> TernaryForm {
        parse_form(s, &NumberField::rationals()).unwrap()
    }

    fn label(s: &str) -> TypeLabel {
        classify_cubic(&f(s)).unwrap().type_label
    }

    #[test]
    fn table_of_types() {
        assert_eq!(label("x*y*z"), TypeLabel::S);
        assert_eq!(label("x*(x^2 - 3*y*z)"), TypeLabel::SPrime);
        assert_eq!(label("x*y*(x - y)"), TypeLabel::T);
        assert_eq!(label("y*(x^2 - y*z)"), TypeLabel::TPrime);
        assert_eq!(label("x^3 + y^3 - 2*x*y*z"), TypeLabel::NC);
        assert_eq!(label("x^3 - y^2*z"), TypeLabel::CC);
        assert_eq!(label("x^3"), TypeLabel::TL);
        assert_eq!(label("x^2*y"), TypeLabel::WL);
        assert_eq!(label("x^3 + y^3 + z^3 - x*y*z"), TypeLabel::EC);
    }

    #[test]
    fn components_and_points() {
        let c = classify_cubic(&f("x*y*z")).unwrap();
        let eqs: Vec<String> = c.components.iter().map(|c| c.equation.to_string()).collect();
        assert_eq!(eqs, ["x", "y", "z"]);
        assert_eq!(c.singular_points.len(), 3);
        assert!(c
            .singular_points
            .iter()
            .all(|s| s.multiplicity == 2 && s.tangent_cone.kind == ConeKind::DistinctPair));

        let c = classify_cubic(&f("y*(x^2 - y*z)")).unwrap();
        let eqs: Vec<String> = c.components.iter().map(|c| c.equation.to_string()).collect();
        assert_eq!(eqs, ["y", "x^2 - y*z"]);

        let c = classify_cubic(&f("x^3 + y^3 + z^3 - x*y*z")).unwrap();
        assert_eq!(c.hesse_lambda, Some(NumberField::rationals().one()));
    }

    #[test]
    fn singular_locus_examples() {
        let SingularLocus::Points { points, .. } = singular_locus(&f("x^3 - y^2*z")).unwrap() else {
            panic!()
        };
        assert_eq!(points.len(), 1);
        assert_eq!(points[0].multiplicity, 2);
        assert_eq!(points[0].tangent_cone.kind, ConeKind::RepeatedLine);
        assert_eq!(points[0].tangent_cone.lines[0].to_form().normalized(), f("y"));
        assert!(matches!(singular_locus(&f("x^2*y")).unwrap(), SingularLocus::Curve(_)));
    }

    #[test]
    fn irrational_components() {
        // three concurrent lines over Q(∛2, ω)
        let c = classify_cubic(&f("x^3 - 2*y^3")).unwrap();
        assert_eq!(c.type_label, TypeLabel::T);
        assert_eq!(c.field.degree(), 6);
        // triangle over Q(ω)
        let c = classify_cubic(&f("x^3 + y^3 + z^3 - 3*x*y*z")).unwrap();
        assert_eq!(c.type_label, TypeLabel::S);
        for comp in &c.components {
            assert!(comp.parametrization.as_ref().unwrap().satisfies(&comp.equation));
        }
    }

    #[test]
    fn inflections() {
        let s = inflection_points(&f("x^3 + y^3 + z^3 - x*y*z")).unwrap();
        assert_eq!(s.points.len(), 9);
        assert!(inflection_points(&f("x^3 - y^2*z")).is_err());
    }
}
