//! The two orders attached to σ: `‖σ‖`, the least power that agrees on the
//! point scheme with a projective linear map of P², and `|σ|`, the least
//! power that is the identity on the point scheme.
//!
//! Reduced rational types are handled through the action of σ on the
//! parametrized components. For S, S′ and NC the powers that extend are
//! exactly those killing a multiplier character χ built from the fixed
//! points, so `‖σ‖` divides `k·ord(χ)` and the least divisor that fits is
//! the answer. Every finite `‖σ‖` carries a fitted matrix as witness.

use std::cell::OnceCell;
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::algebra::{PointScheme, QuadraticAlgebra};
use crate::classify::{classify_cubic, CubicClassification, Parametrization, TypeLabel};
use crate::error::{Error, Result};
use crate::field::{
    adjoin_root, root_of_unity_order, same_field, Embed, Embedding, FieldExt, FieldRef, KPoly,
    Scalar, DEFAULT_DEGREE_CAP,
};
use crate::hesse::{HesseCurve, HessePoint};
use crate::linalg::{
    cross, det, identity, is_scalar_mat, is_zero_vec, kernel, mat_pow, normalize_mat, rank,
    row_mul, Mat3,
};
use crate::order_result::{InfinityReason, OrderResult};
use crate::point::ProjPoint;
use crate::solve::binary_form_roots;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Caps {
    /// Largest power of σ the fitting search will try.
    pub fit: u64,
    /// Largest multiple tried when computing point orders.
    pub torsion: u64,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            fit: 60,
            torsion: 200,
        }
    }
}

impl Caps {
    pub fn validate(&self) -> Result<()> {
        if self.fit < 1 || self.torsion < 1 {
            return Err(Error::InvalidParameter("caps must be at least 1".into()));
        }
        Ok(())
    }
}

/// How an order was decided.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Rule {
    /// σ is already linear on P².
    #[serde(rename = "norm.plane")]
    Plane,
    /// The point-scheme type alone forces the answer.
    #[serde(rename = "norm.type")]
    TypeRule,
    /// Root-of-unity order of the multiplier character, confirmed by fitting.
    #[serde(rename = "norm.character")]
    Character,
    /// σ is a translation; uses the order of three times the translation point.
    #[serde(rename = "norm.translation")]
    Translation,
    /// Bounded search over powers of σ.
    #[serde(rename = "norm.sweep")]
    FitSweep,
    /// No exact sample points are available on this curve.
    #[serde(rename = "norm.no-samples")]
    NoSamples,
    /// Projective order of a fitted matrix.
    #[serde(rename = "order.matrix")]
    MatrixOrder,
    /// Orders of the Möbius actions on the components.
    #[serde(rename = "order.components")]
    ComponentOrder,
    /// Order of the translation point.
    #[serde(rename = "order.point")]
    PointOrder,
    /// Infinite because `‖σ‖` is infinite.
    #[serde(rename = "order.from-norm")]
    FromNorm,
    /// Nothing conclusive within the caps.
    #[serde(rename = "order.undetermined")]
    Undetermined,
}

impl Rule {
    pub fn id(self) -> &'static str {
        match self {
            Rule::Plane => "norm.plane",
            Rule::TypeRule => "norm.type",
            Rule::Character => "norm.character",
            Rule::Translation => "norm.translation",
            Rule::FitSweep => "norm.sweep",
            Rule::NoSamples => "norm.no-samples",
            Rule::MatrixOrder => "order.matrix",
            Rule::ComponentOrder => "order.components",
            Rule::PointOrder => "order.point",
            Rule::FromNorm => "order.from-norm",
            Rule::Undetermined => "order.undetermined",
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

/// An invertible 3×3 matrix up to scalars, acting on row vectors: `p ↦ p·T`.
#[derive(Clone, PartialEq, Eq)]
pub struct ProjectiveMap {
    m: Mat3,
}

impl ProjectiveMap {
    pub fn new(m: Mat3) -> Result<Self> {
        if det(&m).is_zero() {
            return Err(Error::InvalidInput("singular matrix".into()));
        }
        Ok(ProjectiveMap {
            m: normalize_mat(&m),
        })
    }

    pub fn identity(k: &FieldRef) -> Self {
        ProjectiveMap { m: identity(k) }
    }

    pub fn matrix(&self) -> &Mat3 {
        &self.m
    }

    pub fn field(&self) -> &FieldRef {
        self.m[0][0].field()
    }

    pub fn apply(&self, p: &ProjPoint) -> ProjPoint {
        ProjPoint::new(row_mul(p.coords(), &self.m)).expect("invertible map")
    }

    pub fn pow(&self, n: u64) -> Self {
        ProjectiveMap {
            m: normalize_mat(&mat_pow(&self.m, n)),
        }
    }

    pub fn is_identity(&self) -> bool {
        is_scalar_mat(&self.m)
    }

    pub fn rows(&self) -> [[String; 3]; 3] {
        std::array::from_fn(|i| std::array::from_fn(|j| self.m[i][j].to_string()))
    }

    /// Least `n` with `Tⁿ` scalar, decided from the eigenvalues.
    pub fn order(&self) -> Result<OrderResult> {
        let t = &self.m;
        let tr = &(&t[0][0] + &t[1][1]) + &t[2][2];
        let minor = |a: usize, b: usize| &(&t[a][a] * &t[b][b]) - &(&t[a][b] * &t[b][a]);
        let c2 = &(&minor(0, 1) + &minor(0, 2)) + &minor(1, 2);
        let d = det(t);
        let k = self.field().clone();
        let (emb, roots) = binary_form_roots(&[-d, c2, -tr, k.one()], DEFAULT_DEGREE_CAP)?;
        let te = t.embed(&emb);
        for ([u, v], mult) in &roots {
            if *mult > 1 {
                let mu = u.try_div(v)?;
                let shifted: Vec<Vec<Scalar>> = (0..3)
                    .map(|i| {
                        (0..3)
                            .map(|j| if i == j { &te[i][j] - &mu } else { te[i][j].clone() })
                            .collect()
                    })
                    .collect();
                if 3 - rank(&shifted, 3) < *mult {
                    return Ok(OrderResult::infinite(InfinityReason::AdditiveUnipotent));
                }
            }
        }
        let eig: Vec<Scalar> = roots
            .iter()
            .map(|([u, v], _)| u.try_div(v))
            .collect::<Result<_>>()?;
        let mut n = 1u64;
        for e in &eig[1..] {
            match root_of_unity_order(&e.try_div(&eig[0])?)? {
                OrderResult::Exact { value } => n = n.lcm(&value),
                other => return Ok(other),
            }
        }
        Ok(OrderResult::exact(n))
    }
}

impl Embed for ProjectiveMap {
    fn embed(&self, e: &Embedding) -> Self {
        ProjectiveMap { m: self.m.embed(e) }
    }
}

impl fmt::Display for ProjectiveMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = self.rows();
        write!(f, "[{}]", r.map(|row| format!("[{}]", row.join(", "))).join(", "))
    }
}

impl fmt::Debug for ProjectiveMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[derive(Clone, Debug)]
pub struct OrderReport {
    pub result: OrderResult,
    pub witness: Option<ProjectiveMap>,
    pub rule: Rule,
}

impl OrderReport {
    fn new(result: OrderResult, rule: Rule) -> Self {
        OrderReport {
            result,
            witness: None,
            rule,
        }
    }
}

/// Which slice of the sample pool to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SampleSet {
    /// Points the matrix is solved from.
    Fit,
    /// Points every fitted matrix is checked against.
    Check,
    /// Points never used by the engine itself.
    Fresh,
}

const FIT_COUNT: usize = 8;
const CHECK_COUNT: usize = 8;
const FRESH_COUNT: usize = 16;
const POOL: usize = FIT_COUNT + CHECK_COUNT + FRESH_COUNT;

/// Möbius map on homogeneous parameters, acting on columns.
type Mobius = [[Scalar; 2]; 2];

#[derive(Clone, Debug)]
enum Geometry {
    Plane,
    Curve(Box<CubicClassification>),
}

#[derive(Clone, Debug)]
struct EcData {
    curve: HesseCurve,
    p: HessePoint,
    translation: bool,
}

/// Permutation of the components under σ and the Möbius action of the
/// first power that fixes every component.
struct ComponentAction {
    k: u64,
    mobius: Vec<Mobius>,
}

pub struct OrderEngine {
    alg: QuadraticAlgebra,
    geometry: Geometry,
    caps: Caps,
    /// Per component (or a single group): fit, check and fresh points.
    pools: Vec<Vec<ProjPoint>>,
    ec: Option<EcData>,
    norm: OnceCell<OrderReport>,
}

impl OrderEngine {
    /// Classifies the point scheme of `alg` and prepares sample points.
    pub fn new(alg: &QuadraticAlgebra, caps: Caps) -> Result<Self> {
        match alg.point_scheme() {
            PointScheme::P2 => Self::build(alg.clone(), Geometry::Plane, caps),
            PointScheme::Cubic(g) => {
                let cls = classify_cubic(&g)?;
                Self::with_classification(alg, &cls, caps)
            }
        }
    }

    /// Uses a classification computed elsewhere; it must describe the point scheme of `alg`.
    pub fn with_classification(
        alg: &QuadraticAlgebra,
        cls: &CubicClassification,
        caps: Caps,
    ) -> Result<Self> {
        if !same_field(&cls.embedding.source, alg.field()) {
            return Err(Error::InvalidInput(
                "classification and algebra live over different fields".into(),
            ));
        }
        let Some(g) = alg.point_scheme().cubic().cloned() else {
            return Err(Error::InvalidInput(
                "the point scheme is all of P2 but a cubic classification was given".into(),
            ));
        };
        if !g.embed(&cls.embedding).is_proportional(&cls.cubic) {
            return Err(Error::InvalidInput(format!(
                "classification is for {} but the point scheme is {g}",
                cls.cubic
            )));
        }
        let alg = alg.embed(&cls.embedding);
        Self::build(alg, Geometry::Curve(Box::new(cls.clone())), caps)
    }

    fn build(alg: QuadraticAlgebra, geometry: Geometry, caps: Caps) -> Result<Self> {
        caps.validate()?;
        let mut eng = OrderEngine {
            alg,
            geometry,
            caps,
            pools: Vec::new(),
            ec: None,
            norm: OnceCell::new(),
        };
        eng.pools = match &eng.geometry {
            Geometry::Plane => {
                let k = eng.alg.field().clone();
                vec![sample_params()
                    .take(POOL)
                    .map(|t| ProjPoint::new([k.one(), k.int(t), k.int(t * t * t)]).unwrap())
                    .collect()]
            }
            Geometry::Curve(cls) => match cls.type_label {
                TypeLabel::TL | TypeLabel::WL => Vec::new(),
                TypeLabel::EC => Vec::new(),
                _ => cls
                    .components
                    .iter()
                    .map(|c| {
                        let param = c.parametrization.as_ref().ok_or_else(|| {
                            Error::Invariant("reduced component without a parametrization".into())
                        })?;
                        Ok(component_samples(cls, param))
                    })
                    .collect::<Result<_>>()?,
            },
        };
        eng.setup_ec()?;
        Ok(eng)
    }

    pub fn caps(&self) -> Caps {
        self.caps
    }

    /// Field the engine works over (the classification field, possibly extended for sampling).
    pub fn field(&self) -> &FieldRef {
        self.alg.field()
    }

    pub fn algebra(&self) -> &QuadraticAlgebra {
        &self.alg
    }

    pub fn classification(&self) -> Option<&CubicClassification> {
        match &self.geometry {
            Geometry::Plane => None,
            Geometry::Curve(c) => Some(c),
        }
    }

    pub fn type_label(&self) -> TypeLabel {
        match &self.geometry {
            Geometry::Plane => TypeLabel::P,
            Geometry::Curve(c) => c.type_label,
        }
    }

    /// The translation point `σ(o)` when the point scheme is a Hesse cubic.
    pub fn translation_point(&self) -> Option<&HessePoint> {
        self.ec.as_ref().map(|e| &e.p)
    }

    pub fn hesse_curve(&self) -> Option<&HesseCurve> {
        self.ec.as_ref().map(|e| &e.curve)
    }

    /// True when σ is known to be translation by [`Self::translation_point`].
    pub fn is_translation(&self) -> bool {
        self.ec.as_ref().is_some_and(|e| e.translation)
    }

    pub fn samples(&self, set: SampleSet) -> Vec<ProjPoint> {
        let range = match set {
            SampleSet::Fit => 0..FIT_COUNT,
            SampleSet::Check => FIT_COUNT..FIT_COUNT + CHECK_COUNT,
            SampleSet::Fresh => FIT_COUNT + CHECK_COUNT..POOL,
        };
        self.pools
            .iter()
            .flat_map(|pool| pool.get(range.clone()).unwrap_or(&[]).iter().cloned())
            .collect()
    }

    fn setup_ec(&mut self) -> Result<()> {
        let Geometry::Curve(cls) = &self.geometry else {
            return Ok(());
        };
        if cls.type_label != TypeLabel::EC {
            return Ok(());
        }
        let Some(lambda) = cls.hesse_lambda.clone() else {
            return Ok(());
        };
        let curve = HesseCurve::new(lambda)?;
        if !curve.equation().is_proportional(&cls.cubic) {
            return Ok(());
        }
        let o = curve.identity();
        let Some(sp) = self.alg.sigma_eval(o.point())? else {
            return Ok(());
        };
        let p = curve.point(sp)?;
        let (emb, pool) = ec_pool(&curve, &p, POOL)?;
        if pool.len() < POOL {
            return Ok(());
        }
        self.alg = self.alg.embed(&emb);
        self.geometry = Geometry::Curve(Box::new(cls.embed(&emb)));
        let curve = curve.embed(&emb);
        let p = p.embed(&emb);
        let mut translation = true;
        for q in pool.iter().take(FIT_COUNT) {
            let image = self.alg.sigma_eval(q.point())?;
            if image.as_ref() != Some(q.add(&p)?.point()) {
                translation = false;
                break;
            }
        }
        self.pools = vec![pool.iter().map(|q| q.point().clone()).collect()];
        self.ec = Some(EcData {
            curve,
            p,
            translation,
        });
        Ok(())
    }

    fn images(&self, pts: &[ProjPoint], i: u64) -> Result<Vec<(ProjPoint, ProjPoint)>> {
        let mut out = Vec::with_capacity(pts.len());
        for p in pts {
            if let Some(q) = self.alg.sigma_iter(p, i)? {
                out.push((p.clone(), q));
            }
        }
        Ok(out)
    }

    /// A matrix `T` with `σⁱ(p) = p·T` on the fit samples, checked on the
    /// check samples and required to preserve the cubic; `None` if σⁱ is not linear.
    pub fn fit(&self, i: u64) -> Result<Option<ProjectiveMap>> {
        self.fit_with(
            i,
            &self.samples(SampleSet::Fit),
            &self.samples(SampleSet::Check),
        )
    }

    pub fn fit_with(
        &self,
        i: u64,
        fit: &[ProjPoint],
        check: &[ProjPoint],
    ) -> Result<Option<ProjectiveMap>> {
        if i < 1 {
            return Err(Error::InvalidParameter("power must be at least 1".into()));
        }
        let fp = self.images(fit, i)?;
        let cp = self.images(check, i)?;
        self.fit_pairs(&fp, &cp)
    }

    fn fit_pairs(
        &self,
        fit: &[(ProjPoint, ProjPoint)],
        check: &[(ProjPoint, ProjPoint)],
    ) -> Result<Option<ProjectiveMap>> {
        if fit.len() < 4 {
            return Ok(None);
        }
        let k = self.field().clone();
        let mut rows = Vec::new();
        for (p, q) in fit {
            let (p, q) = (p.coords(), q.coords());
            // (p·T) × q = 0, one row per component of the cross product
            for (a, b) in [(1, 2), (2, 0), (0, 1)] {
                let mut row = vec![k.zero(); 9];
                for i in 0..3 {
                    row[3 * i + a] = &p[i] * &q[b];
                    row[3 * i + b] = -(&p[i] * &q[a]);
                }
                rows.push(row);
            }
        }
        let ker = kernel(&rows, 9, &k);
        if ker.len() != 1 {
            return Ok(None);
        }
        let m: Mat3 = std::array::from_fn(|i| std::array::from_fn(|j| ker[0][3 * i + j].clone()));
        let Ok(t) = ProjectiveMap::new(m) else {
            return Ok(None);
        };
        let agrees = |(p, q): &(ProjPoint, ProjPoint)| {
            is_zero_vec(&cross(&row_mul(p.coords(), t.matrix()), q.coords()))
        };
        if !fit.iter().chain(check).all(agrees) {
            return Ok(None);
        }
        if let Geometry::Curve(cls) = &self.geometry {
            if !cls.cubic.compose(t.matrix()).is_proportional(&cls.cubic) {
                return Ok(None);
            }
        }
        Ok(Some(t))
    }

    /// Checks `σⁿ(p) = p·T` on the fresh samples, which the engine never uses.
    pub fn verify_witness(&self, n: u64, t: &ProjectiveMap) -> Result<bool> {
        let fresh = self.samples(SampleSet::Fresh);
        if fresh.is_empty() {
            return Ok(false);
        }
        for p in &fresh {
            match self.alg.sigma_iter(p, n)? {
                Some(q) if t.apply(p) == q => {}
                _ => return Ok(false),
            }
        }
        Ok(true)
    }

    pub fn sigma_norm(&self) -> Result<OrderReport> {
        if let Some(r) = self.norm.get() {
            return Ok(r.clone());
        }
        let r = self.compute_norm()?;
        let _ = self.norm.set(r.clone());
        Ok(r)
    }

    fn compute_norm(&self) -> Result<OrderReport> {
        let cls = match &self.geometry {
            Geometry::Plane => {
                let t = self.fit(1)?.ok_or_else(|| {
                    Error::Invariant("σ is not linear although the point scheme is P2".into())
                })?;
                return Ok(OrderReport {
                    result: OrderResult::exact(1),
                    witness: Some(t),
                    rule: Rule::Plane,
                });
            }
            Geometry::Curve(c) => c,
        };
        match cls.type_label {
            TypeLabel::T | TypeLabel::TPrime | TypeLabel::CC | TypeLabel::TL | TypeLabel::WL => {
                Ok(OrderReport::new(
                    OrderResult::infinite(InfinityReason::TypeRule),
                    Rule::TypeRule,
                ))
            }
            TypeLabel::S | TypeLabel::SPrime | TypeLabel::NC => self.norm_by_character(cls),
            TypeLabel::EC => self.norm_ec(),
            TypeLabel::P => Err(Error::Invariant("type P with a cubic point scheme".into())),
        }
    }

    fn norm_by_character(&self, cls: &CubicClassification) -> Result<OrderReport> {
        let act = self.component_action(cls)?;
        let (k, chi) = character(cls, &act)?;
        let m = match root_of_unity_order(&chi)? {
            OrderResult::Exact { value } => value,
            other => return Ok(OrderReport::new(other, Rule::Character)),
        };
        let n = k * m;
        for d in divisors(n) {
            if d > self.caps.fit {
                return Ok(OrderReport::new(
                    OrderResult::unknown(self.caps.fit),
                    Rule::Character,
                ));
            }
            if let Some(t) = self.fit(d)? {
                return Ok(OrderReport {
                    result: OrderResult::exact(d),
                    witness: Some(t),
                    rule: Rule::Character,
                });
            }
        }
        Err(Error::Invariant(format!(
            "σ^{n} kills the multiplier character but no linear extension was fitted"
        )))
    }

    fn norm_ec(&self) -> Result<OrderReport> {
        let Some(ec) = &self.ec else {
            return Ok(OrderReport::new(
                OrderResult::unknown(self.caps.fit),
                Rule::NoSamples,
            ));
        };
        if ec.translation {
            let three_p = ec.p.mul(3);
            let n = match three_p.order(self.caps.torsion)? {
                OrderResult::Exact { value } => value,
                other => return Ok(OrderReport::new(other, Rule::Translation)),
            };
            let t = self.fit(n)?.ok_or_else(|| {
                Error::Invariant(format!("σ^{n} is translation by a 3-torsion point but was not fitted"))
            })?;
            for d in divisors(n).into_iter().filter(|&d| d < n) {
                if self.fit(d)?.is_some() {
                    return Err(Error::Invariant(format!(
                        "σ^{d} fitted although 3·{d}·p is not the identity"
                    )));
                }
            }
            return Ok(OrderReport {
                result: OrderResult::exact(n),
                witness: Some(t),
                rule: Rule::Translation,
            });
        }
        let fit = self.samples(SampleSet::Fit);
        let check = self.samples(SampleSet::Check);
        let mut cur: Vec<(ProjPoint, ProjPoint)> = fit.iter().map(|p| (p.clone(), p.clone())).collect();
        let mut cur_check: Vec<(ProjPoint, ProjPoint)> =
            check.iter().map(|p| (p.clone(), p.clone())).collect();
        for i in 1..=self.caps.fit {
            cur = self.step(cur)?;
            cur_check = self.step(cur_check)?;
            if let Some(t) = self.fit_pairs(&cur, &cur_check)? {
                return Ok(OrderReport {
                    result: OrderResult::exact(i),
                    witness: Some(t),
                    rule: Rule::FitSweep,
                });
            }
        }
        Ok(OrderReport::new(
            OrderResult::unknown(self.caps.fit),
            Rule::FitSweep,
        ))
    }

    fn step(&self, pairs: Vec<(ProjPoint, ProjPoint)>) -> Result<Vec<(ProjPoint, ProjPoint)>> {
        let mut out = Vec::with_capacity(pairs.len());
        for (p, q) in pairs {
            if let Some(q2) = self.alg.sigma_eval(&q)? {
                out.push((p, q2));
            }
        }
        Ok(out)
    }

    pub fn sigma_order(&self) -> Result<OrderReport> {
        let norm = self.sigma_norm()?;
        let cls = match &self.geometry {
            Geometry::Plane => {
                let t = norm.witness.as_ref().expect("type P norm has a witness");
                return Ok(OrderReport::new(t.order()?, Rule::MatrixOrder));
            }
            Geometry::Curve(c) => c,
        };
        let report = match cls.type_label {
            TypeLabel::TL | TypeLabel::WL => OrderReport::new(
                OrderResult::infinite(InfinityReason::TypeRule),
                Rule::FromNorm,
            ),
            TypeLabel::EC => self.order_ec(&norm)?,
            _ => {
                let act = self.component_action(cls)?;
                let mut n = 1u64;
                let mut res = None;
                for m in &act.mobius {
                    match mobius_order(m)? {
                        OrderResult::Exact { value } => n = n.lcm(&value),
                        other => {
                            res = Some(other);
                            break;
                        }
                    }
                }
                let res = res.unwrap_or(OrderResult::exact(act.k * n));
                OrderReport::new(res, Rule::ComponentOrder)
            }
        };
        if let (Some(a), Some(b)) = (norm.result.as_exact(), report.result.as_exact()) {
            if b % a != 0 {
                return Err(Error::Invariant(format!("‖σ‖ = {a} does not divide |σ| = {b}")));
            }
        }
        if norm.result.is_finite() == Some(false) && report.result.is_finite() == Some(true) {
            return Err(Error::Invariant("|σ| finite while ‖σ‖ is infinite".into()));
        }
        Ok(report)
    }

    fn order_ec(&self, norm: &OrderReport) -> Result<OrderReport> {
        if let Some(ec) = self.ec.as_ref().filter(|e| e.translation) {
            return Ok(OrderReport::new(ec.p.order(self.caps.torsion)?, Rule::PointOrder));
        }
        if let (Some(n), Some(t)) = (norm.result.as_exact(), &norm.witness) {
            let r = match t.order()? {
                OrderResult::Exact { value } => OrderResult::exact(n * value),
                other => other,
            };
            return Ok(OrderReport::new(r, Rule::MatrixOrder));
        }
        Ok(OrderReport::new(
            OrderResult::unknown(self.caps.torsion),
            Rule::Undetermined,
        ))
    }

    fn component_action(&self, cls: &CubicClassification) -> Result<ComponentAction> {
        let comps = &cls.components;
        let mut perm = Vec::with_capacity(comps.len());
        for pool in &self.pools {
            let p = pool.first().ok_or_else(|| Error::Invariant("empty sample pool".into()))?;
            let q = self
                .alg
                .sigma_eval(p)?
                .ok_or_else(|| Error::Invariant(format!("σ undefined at smooth point {p}")))?;
            let c = cls
                .component_of(&q)
                .ok_or_else(|| Error::Invariant(format!("σ({p}) = {q} is off the point scheme")))?;
            perm.push(c);
        }
        let mut seen = perm.clone();
        seen.sort();
        seen.dedup();
        if seen.len() != perm.len() {
            return Err(Error::Invariant("σ does not permute the components".into()));
        }
        let mut k = 1u64;
        for start in 0..perm.len() {
            let mut len = 1u64;
            let mut c = perm[start];
            while c != start {
                c = perm[c];
                len += 1;
            }
            k = k.lcm(&len);
        }
        let mut mobius = Vec::with_capacity(comps.len());
        for (comp, pool) in comps.iter().zip(&self.pools) {
            let param = comp.parametrization.as_ref().unwrap();
            let mut pairs = Vec::new();
            for p in pool.iter().take(6) {
                let q = self
                    .alg
                    .sigma_iter(p, k)?
                    .ok_or_else(|| Error::Invariant(format!("σ^{k} undefined at {p}")))?;
                let (Some(a), Some(b)) = (invert(param, p), invert(param, &q)) else {
                    return Err(Error::Invariant(format!(
                        "σ^{k} does not preserve the component {}",
                        comp.equation
                    )));
                };
                pairs.push((a, b));
            }
            mobius.push(fit_mobius(&pairs)?);
        }
        Ok(ComponentAction { k, mobius })
    }
}

/// ‖σ‖ for a single power: `Some(T)` iff σⁱ extends to the linear map `T`.
pub fn fit_projective_extension(alg: &QuadraticAlgebra, i: u64) -> Result<Option<ProjectiveMap>> {
    OrderEngine::new(alg, Caps::default())?.fit(i)
}

pub fn sigma_norm(alg: &QuadraticAlgebra, caps: Caps) -> Result<OrderReport> {
    OrderEngine::new(alg, caps)?.sigma_norm()
}

pub fn sigma_order(alg: &QuadraticAlgebra, caps: Caps) -> Result<OrderReport> {
    OrderEngine::new(alg, caps)?.sigma_order()
}

fn sample_params() -> impl Iterator<Item = i64> {
    (2i64..).filter(|&n| (2..).take_while(|d| d * d <= n).all(|d| n % d != 0))
}

fn component_samples(cls: &CubicClassification, param: &Parametrization) -> Vec<ProjPoint> {
    sample_params()
        .take(4 * POOL)
        .filter_map(|t| param.at_int(t))
        .filter(|p| !cls.is_singular_point(p))
        .filter(|p| cls.components.iter().filter(|c| c.equation.eval_point(p).is_zero()).count() == 1)
        .take(POOL)
        .collect()
}

/// Points of a Hesse curve built from the group law: translates of `p` by
/// the rational 3-torsion, then combinations with one point of infinite
/// order cut out by a line through the identity. At most one quadratic
/// extension is made, since heights grow quickly in towers.
fn ec_pool(curve: &HesseCurve, p: &HessePoint, want: usize) -> Result<(Embedding, Vec<HessePoint>)> {
    let k = curve.field().clone();
    let torsion = |c: &HesseCurve| -> Result<Vec<HessePoint>> {
        let f = c.field();
        Ok(vec![
            c.identity(),
            c.point(ProjPoint::from_ints(f, [0, 1, -1])?)?,
            c.point(ProjPoint::from_ints(f, [-1, 0, 1])?)?,
        ])
    };
    let fill = |pool: &mut Vec<HessePoint>, g: &HessePoint, shifts: &[HessePoint], reach: i64| -> Result<()> {
        for a in 1..=reach {
            let ga = g.mul(a as u64);
            for base in [ga.clone(), ga.neg()] {
                for s in shifts {
                    let q = base.add(s)?;
                    if !pool.contains(&q) {
                        pool.push(q);
                    }
                }
            }
        }
        Ok(())
    };
    let mut pool = torsion(curve)?;
    fill(&mut pool, p, &torsion(curve)?, 4)?;
    if pool.len() >= want {
        pool.truncate(want);
        return Ok((Embedding::identity(&k), pool));
    }
    let o = curve.identity().point().coords().clone();
    let mut chosen: Option<(Embedding, HessePoint)> = None;
    for m in 1..=16i64 {
        // o + u·(0, 1, m): the cubic in u has the root u = 0
        let line = Parametrization::new(std::array::from_fn(|i| {
            let d = [k.zero(), k.one(), k.int(m)];
            KPoly::new(&k, vec![o[i].clone(), d[i].clone()])
        }));
        let h = line.pull_back(&curve.equation());
        let Some(q) = h.div_exact(&KPoly::x(&k)) else {
            continue;
        };
        if q.degree() != Some(2) {
            continue;
        }
        let adj = match adjoin_root(&q, DEFAULT_DEGREE_CAP) {
            Ok(a) => a,
            Err(Error::DegreeCap { .. }) => break,
            Err(e) => return Err(e),
        };
        let c = curve.embed(&adj.embedding);
        let pt = c.point(line.embed(&adj.embedding).at(&adj.root).expect("nonzero point"))?;
        if pt.order(24)?.is_finite() == Some(true) {
            continue;
        }
        chosen = Some((adj.embedding, pt));
        break;
    }
    let Some((emb, g)) = chosen else {
        return Ok((Embedding::identity(&k), pool));
    };
    let c = curve.embed(&emb);
    let mut pool = pool.embed(&emb);
    let p = p.embed(&emb);
    let mut shifts = torsion(&c)?;
    shifts.extend(shifts.clone().iter().map(|t| t.add(&p)).collect::<Result<Vec<_>>>()?);
    let mut reach = 1;
    while pool.len() < want && reach <= 6 {
        fill(&mut pool, &g.mul(reach as u64), &shifts, 1)?;
        reach += 1;
    }
    pool.truncate(want);
    Ok((emb, pool))
}

/// Homogeneous parameter of `p` on the parametrized curve, when unique.
fn invert(param: &Parametrization, p: &ProjPoint) -> Option<[Scalar; 2]> {
    let c = param.coords();
    let pc = p.coords();
    let comp = |a: usize, b: usize| c[b].scale(&pc[a]).sub(&c[a].scale(&pc[b]));
    let parts = [comp(1, 2), comp(2, 0), comp(0, 1)];
    let mut h: Option<KPoly> = None;
    for part in parts.iter().filter(|q| !q.is_zero()) {
        h = Some(match h {
            None => part.clone(),
            Some(g) => g.gcd(part),
        });
    }
    let k = p.field().clone();
    let h = h?;
    match h.degree() {
        Some(1) => Some([-h.coeff(0).try_div(&h.coeff(1)).ok()?, k.one()]),
        Some(0) if &param.at_infinity() == p => Some([k.one(), k.zero()]),
        _ => None,
    }
}

/// Parameters where the parametrization passes through `p`, over an extension.
fn preimages(param: &Parametrization, p: &ProjPoint) -> Result<(Embedding, Vec<[Scalar; 2]>)> {
    let c = param.coords();
    let pc = p.coords();
    let comp = |a: usize, b: usize| c[b].scale(&pc[a]).sub(&c[a].scale(&pc[b]));
    let mut h: Option<KPoly> = None;
    for part in [comp(1, 2), comp(2, 0), comp(0, 1)].iter().filter(|q| !q.is_zero()) {
        h = Some(match h {
            None => part.clone(),
            Some(g) => g.gcd(part),
        });
    }
    let h = h.ok_or_else(|| Error::Invariant("constant parametrization".into()))?;
    let k = p.field().clone();
    let mut out = Vec::new();
    let mut emb = Embedding::identity(&k);
    if &param.at_infinity() == p {
        out.push([k.one(), k.zero()]);
    }
    if h.degree().unwrap_or(0) > 0 {
        let (e, roots) = binary_form_roots(h.coeffs(), DEFAULT_DEGREE_CAP)?;
        out = out.embed(&e);
        out.extend(roots.into_iter().map(|(r, _)| r));
        emb = e;
    }
    Ok((emb, out))
}

fn fit_mobius(pairs: &[([Scalar; 2], [Scalar; 2])]) -> Result<Mobius> {
    let k = pairs[0].0[0].field().clone();
    let rows: Vec<Vec<Scalar>> = pairs
        .iter()
        .map(|(t, s)| {
            vec![
                -(&s[1] * &t[0]),
                -(&s[1] * &t[1]),
                &s[0] * &t[0],
                &s[0] * &t[1],
            ]
        })
        .collect();
    let ker = kernel(&rows, 4, &k);
    if ker.len() != 1 {
        return Err(Error::Invariant(format!(
            "σ does not act on a component as a Möbius map (kernel dimension {})",
            ker.len()
        )));
    }
    let v = &ker[0];
    let m = [[v[0].clone(), v[1].clone()], [v[2].clone(), v[3].clone()]];
    if (&m[0][0] * &m[1][1] - &m[0][1] * &m[1][0]).is_zero() {
        return Err(Error::Invariant("degenerate Möbius map".into()));
    }
    Ok(m)
}

fn mob_apply(m: &Mobius, t: &[Scalar; 2]) -> [Scalar; 2] {
    std::array::from_fn(|i| &(&m[i][0] * &t[0]) + &(&m[i][1] * &t[1]))
}

fn mob_mul(a: &Mobius, b: &Mobius) -> Mobius {
    std::array::from_fn(|i| std::array::from_fn(|j| &(&a[i][0] * &b[0][j]) + &(&a[i][1] * &b[1][j])))
}

fn par_eq(a: &[Scalar; 2], b: &[Scalar; 2]) -> bool {
    (&(&a[0] * &b[1]) - &(&a[1] * &b[0])).is_zero()
}

/// Eigenvalue of `m` on the fixed parameter `t`.
fn eigenvalue(m: &Mobius, t: &[Scalar; 2]) -> Result<Scalar> {
    let y = mob_apply(m, t);
    if !par_eq(&y, t) {
        return Err(Error::Invariant("expected a fixed point of the component action".into()));
    }
    let j = if t[0].is_zero() { 1 } else { 0 };
    y[j].try_div(&t[j])
}

/// Multiplier at the fixed point `a` of a map whose other fixed point is `b`.
fn multiplier(m: &Mobius, a: &[Scalar; 2], b: &[Scalar; 2]) -> Result<Scalar> {
    eigenvalue(m, b)?.try_div(&eigenvalue(m, a)?)
}

fn mobius_order(m: &Mobius) -> Result<OrderResult> {
    let tr = &m[0][0] + &m[1][1];
    let d = &(&m[0][0] * &m[1][1]) - &(&m[0][1] * &m[1][0]);
    let disc = &(&tr * &tr) - &d.scale(&crate::field::rat(4));
    if disc.is_zero() {
        let scalar = m[0][1].is_zero() && m[1][0].is_zero() && m[0][0] == m[1][1];
        return Ok(if scalar {
            OrderResult::exact(1)
        } else {
            OrderResult::infinite(InfinityReason::AdditiveUnipotent)
        });
    }
    let k = tr.field().clone();
    let (_, roots) = binary_form_roots(&[d, -tr, k.one()], DEFAULT_DEGREE_CAP)?;
    let ev: Vec<Scalar> = roots
        .iter()
        .map(|([u, v], _)| u.try_div(v))
        .collect::<Result<_>>()?;
    root_of_unity_order(&ev[0].try_div(&ev[1])?)
}

/// The power `k` of σ that fixes every component and special point, and
/// the multiplier character of σᵏ.
fn character(cls: &CubicClassification, act: &ComponentAction) -> Result<(u64, Scalar)> {
    let pts: Vec<&ProjPoint> = cls.singular_points.iter().map(|s| &s.point).collect();
    let param = |i: usize| cls.components[i].parametrization.as_ref().unwrap();
    let through = |a: &ProjPoint, b: &ProjPoint| -> Result<usize> {
        cls.components
            .iter()
            .position(|c| c.equation.eval_point(a).is_zero() && c.equation.eval_point(b).is_zero())
            .ok_or_else(|| Error::Invariant("no component through both points".into()))
    };
    let fixed = |i: usize, p: &ProjPoint| {
        invert(param(i), p).ok_or_else(|| Error::Invariant(format!("{p} has no unique parameter")))
    };
    match cls.type_label {
        TypeLabel::S => {
            let mut chi = cls.field.one();
            for (a, b) in [(0, 1), (1, 2), (2, 0)] {
                let c = through(pts[a], pts[b])?;
                let ta = fixed(c, pts[a])?;
                let tb = fixed(c, pts[b])?;
                chi = &chi * &multiplier(&act.mobius[c], &ta, &tb)?;
            }
            Ok((act.k, chi))
        }
        TypeLabel::SPrime => {
            let line = line_index(cls)?;
            let conic = 1 - line;
            let (l0, l1) = (fixed(line, pts[0])?, fixed(line, pts[1])?);
            let (c0, c1) = (fixed(conic, pts[0])?, fixed(conic, pts[1])?);
            let (mut ml, mut mc, mut k) =
                (act.mobius[line].clone(), act.mobius[conic].clone(), act.k);
            if !par_eq(&mob_apply(&ml, &l0), &l0) {
                ml = mob_mul(&ml, &ml);
                mc = mob_mul(&mc, &mc);
                k *= 2;
            }
            let mu_l = multiplier(&ml, &l0, &l1)?;
            let mu_c = multiplier(&mc, &c0, &c1)?;
            Ok((k, mu_l.try_div(&(&mu_c * &mu_c))?))
        }
        TypeLabel::NC => {
            let (emb, b) = preimages(param(0), pts[0])?;
            if b.len() != 2 {
                return Err(Error::Invariant(format!(
                    "the node has {} preimages on the normalization",
                    b.len()
                )));
            }
            let mut m = act.mobius[0].embed(&emb);
            let mut k = act.k;
            if !par_eq(&mob_apply(&m, &b[0]), &b[0]) {
                m = mob_mul(&m, &m);
                k *= 2;
            }
            Ok((k, multiplier(&m, &b[0], &b[1])?.pow(3)))
        }
        t => Err(Error::Invariant(format!("no multiplier character for type {t}"))),
    }
}

fn line_index(cls: &CubicClassification) -> Result<usize> {
    cls.components
        .iter()
        .position(|c| c.equation.degree() == 1)
        .ok_or_else(|| Error::Invariant("S' without a line component".into()))
}

fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n % d == 0).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::NumberField;
    use crate::table1::{ec_two_torsion_row, omega_field, zeta6_field, RowType, Table1Row};

    fn row(t: RowType, k: &FieldRef, alpha: Option<Scalar>) -> QuadraticAlgebra {
        Table1Row::new(t, k, alpha, None).unwrap().algebra()
    }

    fn exact(n: u64) -> OrderResult {
        OrderResult::exact(n)
    }

    #[test]
    fn s1_at_primitive_sixth_root() {
        let k = zeta6_field();
        let a = row(RowType::S1, &k, Some(k.generator()));
        let e = OrderEngine::new(&a, Caps::default()).unwrap();
        let n = e.sigma_norm().unwrap();
        assert_eq!(n.result, exact(2));
        assert!(e.verify_witness(2, n.witness.as_ref().unwrap()).unwrap());
        assert!(e.fit(1).unwrap().is_none());
        assert_eq!(e.sigma_order().unwrap().result, exact(6));
    }

    #[test]
    fn plane_type_at_cube_root() {
        let k = omega_field();
        let a = row(RowType::P, &k, Some(k.generator()));
        let e = OrderEngine::new(&a, Caps::default()).unwrap();
        assert_eq!(e.sigma_norm().unwrap().result, exact(1));
        assert_eq!(e.sigma_order().unwrap().result, exact(3));
    }

    #[test]
    fn non_root_of_unity_alpha() {
        let k = NumberField::rationals();
        for t in [RowType::S1, RowType::S3, RowType::SPrime, RowType::NC] {
            let a = row(t, &k, Some(k.int(2)));
            let e = OrderEngine::new(&a, Caps::default()).unwrap();
            let n = e.sigma_norm().unwrap();
            assert_eq!(
                n.result,
                OrderResult::infinite(InfinityReason::NonRootOfUnity),
                "{t:?}"
            );
            assert!(e.sigma_order().unwrap().result.is_finite() == Some(false));
        }
    }

    #[test]
    fn unipotent_types() {
        let k = NumberField::rationals();
        let a = row(RowType::T1, &k, None);
        let e = OrderEngine::new(&a, Caps::default()).unwrap();
        assert_eq!(e.sigma_norm().unwrap().result, OrderResult::infinite(InfinityReason::TypeRule));
        assert_eq!(
            e.sigma_order().unwrap().result,
            OrderResult::infinite(InfinityReason::AdditiveUnipotent)
        );
        for i in 1..=5 {
            assert!(e.fit(i).unwrap().is_none());
        }
    }

    #[test]
    fn ec_two_torsion_translation() {
        let r = ec_two_torsion_row();
        let e = OrderEngine::new(&r.algebra(), Caps::default()).unwrap();
        assert!(e.is_translation());
        let n = e.sigma_norm().unwrap();
        assert_eq!(n.result, exact(2));
        assert!(n.witness.unwrap().is_identity());
        assert_eq!(e.sigma_order().unwrap().result, exact(2));
    }

    #[test]
    fn matrix_orders() {
        let k = omega_field();
        let w = k.generator();
        let t = ProjectiveMap::new(crate::linalg::diag([k.one(), w.clone(), &w * &w])).unwrap();
        assert_eq!(t.order().unwrap(), exact(3));
        let q = NumberField::rationals();
        let u = ProjectiveMap::new([
            [q.one(), q.one(), q.zero()],
            [q.zero(), q.one(), q.zero()],
            [q.zero(), q.zero(), q.int(1)],
        ])
        .unwrap();
        assert_eq!(u.order().unwrap(), OrderResult::infinite(InfinityReason::AdditiveUnipotent));
    }
}
