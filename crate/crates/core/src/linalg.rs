//! Small dense linear algebra over a number field.

use crate::field::{Embed, Embedding, FieldExt, FieldRef, Scalar};

pub type Mat3 = [[Scalar; 3]; 3];

impl<T: Embed, const N: usize> Embed for [T; N] {
    fn embed(&self, e: &Embedding) -> Self {
        std::array::from_fn(|i| self[i].embed(e))
    }
}

pub fn identity(k: &FieldRef) -> Mat3 {
    std::array::from_fn(|i| std::array::from_fn(|j| if i == j { k.one() } else { k.zero() }))
}

pub fn diag(d: [Scalar; 3]) -> Mat3 {
    let k = d[0].field().clone();
    let [a, b, c] = d;
    let z = k.zero();
    [
        [a, z.clone(), z.clone()],
        [z.clone(), b, z.clone()],
        [z.clone(), z, c],
    ]
}

pub fn mat_mul(a: &Mat3, b: &Mat3) -> Mat3 {
    std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            let mut acc = &a[i][0] * &b[0][j];
            acc = &acc + &(&a[i][1] * &b[1][j]);
            &acc + &(&a[i][2] * &b[2][j])
        })
    })
}

pub fn mat_pow(a: &Mat3, mut n: u64) -> Mat3 {
    let k = a[0][0].field().clone();
    let mut base = a.clone();
    let mut acc = identity(&k);
    while n > 0 {
        if n & 1 == 1 {
            acc = mat_mul(&acc, &base);
        }
        n >>= 1;
        if n > 0 {
            base = mat_mul(&base, &base);
        }
    }
    acc
}

pub fn det(a: &Mat3) -> Scalar {
    let m = |r1: usize, r2: usize, c1: usize, c2: usize| {
        &(&a[r1][c1] * &a[r2][c2]) - &(&a[r1][c2] * &a[r2][c1])
    };
    &(&(&a[0][0] * &m(1, 2, 1, 2)) - &(&a[0][1] * &m(1, 2, 0, 2))) + &(&a[0][2] * &m(1, 2, 0, 1))
}

/// Determinant of the matrix with the given rows.
pub fn det_rows(r0: &[Scalar; 3], r1: &[Scalar; 3], r2: &[Scalar; 3]) -> Scalar {
    det(&[r0.clone(), r1.clone(), r2.clone()])
}

pub fn inverse(a: &Mat3) -> Option<Mat3> {
    let d = det(a);
    let inv = d.inv()?;
    // adjugate
    let c = |r1: usize, r2: usize, c1: usize, c2: usize| {
        &(&a[r1][c1] * &a[r2][c2]) - &(&a[r1][c2] * &a[r2][c1])
    };
    let adj: Mat3 = [
        [c(1, 2, 1, 2), -c(0, 2, 1, 2), c(0, 1, 1, 2)],
        [-c(1, 2, 0, 2), c(0, 2, 0, 2), -c(0, 1, 0, 2)],
        [c(1, 2, 0, 1), -c(0, 2, 0, 1), c(0, 1, 0, 1)],
    ];
    Some(std::array::from_fn(|i| std::array::from_fn(|j| &adj[i][j] * &inv)))
}

pub fn transpose(a: &Mat3) -> Mat3 {
    std::array::from_fn(|i| std::array::from_fn(|j| a[j][i].clone()))
}

/// Row vector times matrix, `p·T`.
pub fn row_mul(p: &[Scalar; 3], t: &Mat3) -> [Scalar; 3] {
    std::array::from_fn(|j| {
        &(&(&p[0] * &t[0][j]) + &(&p[1] * &t[1][j])) + &(&p[2] * &t[2][j])
    })
}

pub fn cross(a: &[Scalar; 3], b: &[Scalar; 3]) -> [Scalar; 3] {
    [
        &(&a[1] * &b[2]) - &(&a[2] * &b[1]),
        &(&a[2] * &b[0]) - &(&a[0] * &b[2]),
        &(&a[0] * &b[1]) - &(&a[1] * &b[0]),
    ]
}

pub fn dot(a: &[Scalar; 3], b: &[Scalar; 3]) -> Scalar {
    &(&(&a[0] * &b[0]) + &(&a[1] * &b[1])) + &(&a[2] * &b[2])
}

pub fn is_zero_vec(v: &[Scalar]) -> bool {
    v.iter().all(|c| c.is_zero())
}

pub fn scale_mat(a: &Mat3, s: &Scalar) -> Mat3 {
    std::array::from_fn(|i| std::array::from_fn(|j| &a[i][j] * s))
}

/// Scales so that the first nonzero entry (row-major) is 1.
pub fn normalize_mat(a: &Mat3) -> Mat3 {
    let first = a.iter().flatten().find(|c| !c.is_zero());
    match first {
        Some(c) => scale_mat(a, &c.inv().unwrap()),
        None => a.clone(),
    }
}

/// True iff `a = c·I` for some nonzero `c`.
pub fn is_scalar_mat(a: &Mat3) -> bool {
    let c = &a[0][0];
    !c.is_zero()
        && (0..3).all(|i| (0..3).all(|j| if i == j { &a[i][j] == c } else { a[i][j].is_zero() }))
}

pub fn proj_eq_mat(a: &Mat3, b: &Mat3) -> bool {
    normalize_mat(a) == normalize_mat(b)
}

/// Reduced row echelon form in place; returns pivot columns.
pub fn rref(rows: &mut Vec<Vec<Scalar>>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        if r >= rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][col].inv().unwrap();
        for v in rows[r].iter_mut() {
            *v = &*v * &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][col].is_zero() {
                let f = rows[i][col].clone();
                for j in 0..ncols {
                    let t = &f * &rows[r][j];
                    rows[i][j] = &rows[i][j] - &t;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

pub fn rank(rows: &[Vec<Scalar>], ncols: usize) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m, ncols).len()
}

/// Basis of the right kernel `{v : A v = 0}`.
pub fn kernel(rows: &[Vec<Scalar>], ncols: usize, k: &FieldRef) -> Vec<Vec<Scalar>> {
    let mut m = rows.to_vec();
    let pivots = rref(&mut m, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![k.zero(); ncols];
            v[f] = k.one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -&m[r][f];
            }
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::NumberField;

    fn m(v: [[i64; 3]; 3]) -> Mat3 {
        let k = NumberField::rationals();
        std::array::from_fn(|i| std::array::from_fn(|j| k.int(v[i][j])))
    }

    #[test]
    fn inverse_roundtrip() {
        let a = m([[2, 1, 0], [0, 1, 3], [1, 0, 1]]);
        let ai = inverse(&a).unwrap();
        assert_eq!(mat_mul(&a, &ai), identity(a[0][0].field()));
        assert!(inverse(&m([[1, 2, 3], [2, 4, 6], [0, 0, 1]])).is_none());
    }

    #[test]
    fn kernel_dimension() {
        let k = NumberField::rationals();
        let rows = vec![
            vec![k.int(1), k.int(2), k.int(3)],
            vec![k.int(2), k.int(4), k.int(6)],
        ];
        let ker = kernel(&rows, 3, &k);
        assert_eq!(ker.len(), 2);
        for v in &ker {
            let s = &(&rows[0][0] * &v[0]) + &(&(&rows[0][1] * &v[1]) + &(&rows[0][2] * &v[2]));
            assert!(s.is_zero());
        }
    }

    #[test]
    fn powers() {
        let a = m([[1, 1, 0], [0, 1, 0], [0, 0, 1]]);
        assert_eq!(mat_pow(&a, 5), m([[1, 5, 0], [0, 1, 0], [0, 0, 1]]));
    }
}
