//! Common zeros of finitely many ternary forms with a finite common zero set.
//!
//! Coordinates are moved so that a chosen center `c` lies off every curve
//! involved; projecting from `c` turns the problem into a univariate
//! resultant in (Y : Z), whose roots are lifted back along the lines through
//! `c`. Algebraic roots are adjoined only when they actually carry a common
//! zero.

use crate::error::{Error, Result};
use crate::field::{
    adjoin_root, factor_k, Embed, Embedding, FieldExt, FieldRef, KPoly, Scalar,
};
use crate::form::TernaryForm;
use crate::linalg::{row_mul, Mat3};
use crate::point::ProjPoint;

/// Common zeros over an extension of the input field.
#[derive(Clone, Debug)]
pub struct Solutions {
    pub field: FieldRef,
    /// Embedding of the input field into `field`.
    pub embedding: Embedding,
    pub points: Vec<ProjPoint>,
}

/// `f(X, y0, z0)` as a polynomial in X.
fn specialize_x(f: &TernaryForm, y0: &Scalar, z0: &Scalar) -> KPoly {
    let k = f.field().clone();
    let d = f.degree() as usize;
    let mut coeffs = vec![k.zero(); d + 1];
    for (e, c) in f.terms() {
        let v = &(c * &y0.pow(e[1] as u64)) * &z0.pow(e[2] as u64);
        coeffs[e[0] as usize] = &coeffs[e[0] as usize] + &v;
    }
    KPoly::new(&k, coeffs)
}

fn gcd_on_line(forms: &[TernaryForm], y0: &Scalar, z0: &Scalar) -> Option<KPoly> {
    let mut h: Option<KPoly> = None;
    for f in forms {
        let p = specialize_x(f, y0, z0);
        if p.is_zero() {
            continue;
        }
        h = Some(match h {
            None => p.monic(),
            Some(g) => g.gcd(&p),
        });
    }
    h
}

/// Deterministic coefficient vectors for the two auxiliary combinations.
fn combinations(n: usize) -> Vec<(Vec<i64>, Vec<i64>)> {
    let unit = |i: usize| (0..n).map(|j| i64::from(i == j)).collect::<Vec<_>>();
    let mut out = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            out.push((unit(i), unit(j)));
        }
    }
    let mut state: u64 = 0x9e37_79b9_7f4a_7c15;
    let mut next = || {
        state = state
            .wrapping_mul(6_364_136_223_846_793_005)
            .wrapping_add(1_442_695_040_888_963_407);
        ((state >> 33) % 11) as i64 - 5
    };
    for _ in 0..24 {
        let a: Vec<i64> = (0..n).map(|_| next()).collect();
        let b: Vec<i64> = (0..n).map(|_| next()).collect();
        out.push((a, b));
    }
    out
}

fn center_candidates() -> impl Iterator<Item = (i64, i64)> {
    (0..).flat_map(|r: i64| {
        (-r..=r).flat_map(move |a| {
            let b = r - a.abs();
            if b == 0 {
                vec![(a, 0)]
            } else {
                vec![(a, b), (a, -b)]
            }
        })
    })
}

fn combine(forms: &[TernaryForm], coeffs: &[i64]) -> TernaryForm {
    let k = forms[0].field().clone();
    let mut acc = TernaryForm::zero(&k, forms[0].degree());
    for (f, &c) in forms.iter().zip(coeffs) {
        if c != 0 {
            acc = acc.add(&f.scale(&k.int(c)));
        }
    }
    acc
}

enum Task {
    YFactor(KPoly),
    Line(Scalar, Scalar),
    XFactor(Scalar, Scalar, KPoly),
}

impl Embed for Task {
    fn embed(&self, e: &Embedding) -> Self {
        match self {
            Task::YFactor(q) => Task::YFactor(q.embed(e)),
            Task::Line(y, z) => Task::Line(y.embed(e), z.embed(e)),
            Task::XFactor(y, z, h) => Task::XFactor(y.embed(e), z.embed(e), h.embed(e)),
        }
    }
}

struct State {
    field: FieldRef,
    emb: Embedding,
    forms: Vec<TernaryForm>,
    center: Mat3,
    tasks: Vec<Task>,
    points: Vec<[Scalar; 3]>,
}

impl State {
    fn commit(&mut self, e: &Embedding) {
        if e.is_identity() {
            return;
        }
        self.field = e.target.clone();
        self.emb = self.emb.then(e);
        self.forms = self.forms.embed(e);
        self.center = self.center.embed(e);
        self.tasks = self.tasks.embed(e);
        self.points = self.points.embed(e);
    }
}

/// All common zeros of `forms`. Fails with [`Error::Precondition`] when the
/// common zero set is infinite.
pub fn common_zeros(forms: &[TernaryForm], degree_cap: usize) -> Result<Solutions> {
    let forms: Vec<TernaryForm> = forms.iter().filter(|f| !f.is_zero()).cloned().collect();
    let Some(first) = forms.first() else {
        return Err(Error::Precondition("all forms vanish identically".into()));
    };
    let k = first.field().clone();
    let identity = Embedding::identity(&k);
    if forms.iter().any(|f| f.degree() == 0) {
        return Ok(Solutions {
            field: k,
            embedding: identity,
            points: Vec::new(),
        });
    }
    if forms.len() < 2 {
        return Err(Error::Precondition("a single curve has infinitely many points".into()));
    }
    let deg = first.degree();
    if forms.iter().any(|f| f.degree() != deg) {
        return Err(Error::Precondition("forms must share one degree".into()));
    }

    for (ca, cb) in combinations(forms.len()) {
        let a = combine(&forms, &ca);
        let b = combine(&forms, &cb);
        if a.is_zero() || b.is_zero() {
            continue;
        }
        let (ci, cj) = center_candidates()
            .find(|&(i, j)| {
                let c = [k.one(), k.int(i), k.int(j)];
                !a.eval(&c).is_zero() && !b.eval(&c).is_zero()
            })
            .unwrap();
        let center: Mat3 = [
            [k.one(), k.int(ci), k.int(cj)],
            [k.zero(), k.one(), k.zero()],
            [k.zero(), k.zero(), k.one()],
        ];
        let a2 = a.compose(&center);
        let b2 = b.compose(&center);
        let dres = (deg * deg) as i64;
        let one = k.one();
        let samples: Vec<(Scalar, Scalar)> = (0..=dres)
            .map(|y0| {
                let y0 = k.int(y0);
                let r = specialize_x(&a2, &y0, &one).resultant(&specialize_x(&b2, &y0, &one));
                (y0, r)
            })
            .collect();
        let r = KPoly::interpolate(&k, &samples);
        if r.is_zero() {
            continue;
        }
        let mut tasks = Vec::new();
        if r.degree().unwrap() < dres as usize {
            tasks.push(Task::Line(k.one(), k.zero()));
        }
        for (q, _) in factor_k(&r) {
            tasks.push(Task::YFactor(q));
        }
        let mut st = State {
            field: k.clone(),
            emb: identity.clone(),
            forms: forms.iter().map(|f| f.compose(&center)).collect(),
            center,
            tasks,
            points: Vec::new(),
        };
        run(&mut st, degree_cap)?;
        let mut points: Vec<ProjPoint> = Vec::new();
        for p in &st.points {
            let q = ProjPoint::new(row_mul(p, &st.center))?;
            if !points.contains(&q) {
                points.push(q);
            }
        }
        return Ok(Solutions {
            field: st.field,
            embedding: st.emb,
            points,
        });
    }
    Err(Error::Precondition(
        "the forms appear to share a common component".into(),
    ))
}

fn run(st: &mut State, cap: usize) -> Result<()> {
    while let Some(task) = st.tasks.pop() {
        match task {
            Task::YFactor(q) => {
                let factors = factor_k(&q);
                if factors.len() > 1 {
                    st.tasks.extend(factors.into_iter().map(|(f, _)| Task::YFactor(f)));
                    continue;
                }
                if q.degree() == Some(1) {
                    let y0 = -q.monic().coeff(0);
                    st.tasks.push(Task::Line(y0, st.field.one()));
                    continue;
                }
                let adj = adjoin_root(&q, cap)?;
                let forms_l = st.forms.embed(&adj.embedding);
                let one = adj.field.one();
                let h = gcd_on_line(&forms_l, &adj.root, &one);
                if matches!(&h, Some(h) if h.degree() == Some(0)) {
                    // No common zero over this root, hence none over its conjugates.
                    continue;
                }
                let ql = q.embed(&adj.embedding);
                st.commit(&adj.embedding);
                let rest = ql.div_exact(&KPoly::linear_root(&adj.root)).unwrap();
                if rest.degree().unwrap_or(0) > 0 {
                    for (f, _) in factor_k(&rest) {
                        st.tasks.push(Task::YFactor(f));
                    }
                }
                st.tasks.push(Task::Line(adj.root, one));
            }
            Task::Line(y0, z0) => {
                let Some(h) = gcd_on_line(&st.forms, &y0, &z0) else {
                    return Err(Error::Precondition(
                        "a whole line lies in the common zero set".into(),
                    ));
                };
                if h.degree() == Some(0) {
                    continue;
                }
                for (f, _) in factor_k(&h) {
                    if f.degree() == Some(1) {
                        st.points.push([-f.coeff(0), y0.clone(), z0.clone()]);
                    } else {
                        st.tasks.push(Task::XFactor(y0.clone(), z0.clone(), f));
                    }
                }
            }
            Task::XFactor(y0, z0, h) => {
                let factors = factor_k(&h);
                if factors.len() > 1 || h.degree() == Some(1) {
                    for (f, _) in factors {
                        if f.degree() == Some(1) {
                            st.points.push([-f.coeff(0), y0.clone(), z0.clone()]);
                        } else {
                            st.tasks.push(Task::XFactor(y0.clone(), z0.clone(), f));
                        }
                    }
                    continue;
                }
                let adj = adjoin_root(&h, cap)?;
                let hl = h.embed(&adj.embedding);
                st.commit(&adj.embedding);
                let (y0, z0) = (y0.embed(&adj.embedding), z0.embed(&adj.embedding));
                st.points.push([adj.root.clone(), y0.clone(), z0.clone()]);
                let rest = hl.div_exact(&KPoly::linear_root(&adj.root)).unwrap();
                if rest.degree().unwrap_or(0) > 0 {
                    st.tasks.push(Task::XFactor(y0, z0, rest));
                }
            }
        }
    }
    Ok(())
}

/// Linear factors of a binary form `Σ c_i u^i v^(d-i)` given by its
/// coefficients, as roots `(u : v)` with multiplicities, extending the field
/// when needed. Returns the final field, the embedding into it, and the roots.
pub fn binary_form_roots(
    coeffs: &[Scalar],
    degree_cap: usize,
) -> Result<(Embedding, Vec<([Scalar; 2], usize)>)> {
    let k = coeffs[0].field().clone();
    let d = coeffs.len() - 1;
    let p = KPoly::new(&k, coeffs.to_vec());
    if p.is_zero() {
        return Err(Error::Precondition("zero binary form".into()));
    }
    let mut emb = Embedding::identity(&k);
    let mut roots: Vec<([Scalar; 2], usize)> = Vec::new();
    let pd = p.degree().unwrap();
    if pd < d {
        roots.push(([k.one(), k.zero()], d - pd));
    }
    // Factors still to split, with multiplicity.
    let mut pending: Vec<(KPoly, usize)> = crate::field::factor_k(&p);
    while let Some((f, m)) = pending.pop() {
        if f.degree() == Some(1) {
            let f = f.monic();
            let fld = f.field().clone();
            roots.push(([-f.coeff(0), fld.one()], m));
            continue;
        }
        let adj = adjoin_root(&f, degree_cap)?;
        let fl = f.embed(&adj.embedding);
        emb = emb.then(&adj.embedding);
        roots = roots
            .into_iter()
            .map(|(r, m)| (r.embed(&adj.embedding), m))
            .collect();
        pending = pending
            .into_iter()
            .map(|(g, m)| (g.embed(&adj.embedding), m))
            .collect();
        roots.push(([adj.root.clone(), adj.field.one()], m));
        let rest = fl.div_exact(&KPoly::linear_root(&adj.root)).unwrap();
        if rest.degree().unwrap_or(0) > 0 {
            for (g, _) in factor_k(&rest) {
                pending.push((g, m));
            }
        }
        // refactor pending over the new field
        pending = pending
            .into_iter()
            .flat_map(|(g, m)| factor_k(&g).into_iter().map(move |(h, _)| (h, m)))
            .collect();
    }
    Ok((emb, roots))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{NumberField, DEFAULT_DEGREE_CAP};
    use crate::parse::parse_form;

    fn f(s: &str, k: &FieldRef) -> TernaryForm {
        parse_form(s, k).unwrap()
    }

    #[test]
    fn partials_of_triangle() {
        let k = NumberField::rationals();
        let sol = common_zeros(&[f("y*z", &k), f("x*z", &k), f("x*y", &k)], DEFAULT_DEGREE_CAP).unwrap();
        assert_eq!(sol.points.len(), 3);
        assert!(sol.field.is_rationals());
    }

    #[test]
    fn conic_and_line_need_extension() {
        let k = NumberField::rationals();
        // x^2 - 2 z^2 = 0, y = 0 → (±√2, 0, 1)
        let sol = common_zeros(
            &[f("x^2 - 2*z^2", &k), f("y^2", &k), f("x*y", &k)],
            DEFAULT_DEGREE_CAP,
        )
        .unwrap();
        assert_eq!(sol.points.len(), 2);
        assert_eq!(sol.field.degree(), 2);
        for p in &sol.points {
            let g = f("x^2 - 2*z^2", &k).embed(&sol.embedding);
            assert!(g.eval_point(p).is_zero());
        }
    }

    #[test]
    fn hesse_inflections() {
        let k = NumberField::rationals();
        let g = f("x^3 + y^3 + z^3", &k);
        let h = g.hessian().unwrap();
        let sol = common_zeros(&[g.clone(), h], DEFAULT_DEGREE_CAP).unwrap();
        assert_eq!(sol.points.len(), 9);
        assert_eq!(sol.field.degree(), 2);
    }

    #[test]
    fn infinite_set_rejected() {
        let k = NumberField::rationals();
        let r = common_zeros(&[f("x*y", &k), f("x*z", &k)], DEFAULT_DEGREE_CAP);
        assert!(matches!(r, Err(Error::Precondition(_))));
    }

    #[test]
    fn binary_roots_with_multiplicity() {
        let k = NumberField::rationals();
        // u^2 v - 0*… : coefficients of v^3, u v^2, u^2 v, u^3 → u^2 v has root v=0 (mult 1) and u=0 (mult 2)
        let (_, roots) = binary_form_roots(&[k.zero(), k.zero(), k.one(), k.zero()], DEFAULT_DEGREE_CAP).unwrap();
        let mut mults: Vec<usize> = roots.iter().map(|r| r.1).collect();
        mults.sort();
        assert_eq!(mults, vec![1, 2]);
    }
}
