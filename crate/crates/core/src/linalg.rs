//! Small dense linear algebra generic over [`Scalar`].

use crate::error::{Error, Result};
use crate::scalar::{Scalar, Tolerance};

pub type Vec3<S> = [S; 3];
pub type Mat3<S> = [[S; 3]; 3];

pub fn cross<S: Scalar>(a: &Vec3<S>, b: &Vec3<S>) -> Vec3<S> {
    [
        a[1].clone() * b[2].clone() - a[2].clone() * b[1].clone(),
        a[2].clone() * b[0].clone() - a[0].clone() * b[2].clone(),
        a[0].clone() * b[1].clone() - a[1].clone() * b[0].clone(),
    ]
}

pub fn dot<S: Scalar>(a: &Vec3<S>, b: &Vec3<S>) -> S {
    a[0].clone() * b[0].clone() + a[1].clone() * b[1].clone() + a[2].clone() * b[2].clone()
}

pub fn scale3<S: Scalar>(k: &S, v: &Vec3<S>) -> Vec3<S> {
    [k.clone() * v[0].clone(), k.clone() * v[1].clone(), k.clone() * v[2].clone()]
}

pub fn add3<S: Scalar>(a: &Vec3<S>, b: &Vec3<S>) -> Vec3<S> {
    [
        a[0].clone() + b[0].clone(),
        a[1].clone() + b[1].clone(),
        a[2].clone() + b[2].clone(),
    ]
}

pub fn sub3<S: Scalar>(a: &Vec3<S>, b: &Vec3<S>) -> Vec3<S> {
    [
        a[0].clone() - b[0].clone(),
        a[1].clone() - b[1].clone(),
        a[2].clone() - b[2].clone(),
    ]
}

pub fn is_zero3<S: Scalar>(v: &Vec3<S>) -> bool {
    v.iter().all(Scalar::is_zero)
}

/// Euclidean norm evaluated in `f64`.
pub fn norm<S: Scalar>(v: &[S]) -> f64 {
    v.iter().map(|x| x.to_f64().powi(2)).sum::<f64>().sqrt()
}

pub fn det3<S: Scalar>(m: &Mat3<S>) -> S {
    dot(&m[0], &cross(&m[1], &m[2]))
}

pub fn transpose3<S: Scalar>(m: &Mat3<S>) -> Mat3<S> {
    std::array::from_fn(|i| std::array::from_fn(|j| m[j][i].clone()))
}

pub fn mat_vec3<S: Scalar>(m: &Mat3<S>, v: &Vec3<S>) -> Vec3<S> {
    std::array::from_fn(|i| dot(&m[i], v))
}

pub fn mat_mul3<S: Scalar>(a: &Mat3<S>, b: &Mat3<S>) -> Mat3<S> {
    let bt = transpose3(b);
    std::array::from_fn(|i| std::array::from_fn(|j| dot(&a[i], &bt[j])))
}

/// Adjugate (transposed cofactor matrix); `m * adj(m) = det(m) * I`.
pub fn adjugate3<S: Scalar>(m: &Mat3<S>) -> Mat3<S> {
    // Rows of the cofactor matrix are cross products of row pairs.
    let cofactors = [cross(&m[1], &m[2]), cross(&m[2], &m[0]), cross(&m[0], &m[1])];
    transpose3(&cofactors)
}

/// `vᵀ M w`.
pub fn bilinear<S: Scalar>(v: &Vec3<S>, m: &Mat3<S>, w: &Vec3<S>) -> S {
    dot(v, &mat_vec3(m, w))
}

pub fn frobenius<S: Scalar>(m: &Mat3<S>) -> f64 {
    m.iter().map(|r| norm(r).powi(2)).sum::<f64>().sqrt()
}

fn pivot_row<S: Scalar>(m: &[Vec<S>], col: usize, from: usize) -> Option<usize> {
    let mut best: Option<(usize, f64)> = None;
    for (r, row) in m.iter().enumerate().skip(from) {
        if row[col].is_zero() {
            continue;
        }
        // Exact backends take the first nonzero entry; floats the largest.
        let weight = if S::EXACT { 1.0 } else { row[col].magnitude() };
        if best.is_none_or(|(_, w)| weight > w) {
            best = Some((r, weight));
        }
    }
    best.map(|(r, _)| r)
}

/// Determinant of a square matrix by Gaussian elimination.
pub fn det<S: Scalar>(mut m: Vec<Vec<S>>) -> S {
    let n = m.len();
    let mut acc = S::one();
    for col in 0..n {
        let Some(p) = pivot_row(&m, col, col) else {
            return S::zero();
        };
        if p != col {
            m.swap(p, col);
            acc = -acc;
        }
        let pivot = m[col][col].clone();
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let f = m[r][col].clone() / pivot.clone();
            for c in col..n {
                let delta = f.clone() * m[col][c].clone();
                m[r][c] = m[r][c].clone() - delta;
            }
        }
        acc = acc * pivot;
    }
    acc
}

/// Reduced row echelon form with the column indices of its pivots.
///
/// In float mode a candidate pivot is treated as zero when it is below
/// `eps` times the largest entry of the input.
pub fn rref<S: Scalar>(mut m: Vec<Vec<S>>, tol: &Tolerance) -> (Vec<Vec<S>>, Vec<usize>) {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let scale = m
        .iter()
        .flat_map(|r| r.iter().map(Scalar::magnitude))
        .fold(0.0, f64::max);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = pivot_row(&m, c, r) else { continue };
        if m[p][c].negligible(scale, tol) {
            for row in m.iter_mut().skip(r) {
                row[c] = S::zero();
            }
            continue;
        }
        m.swap(p, r);
        let pivot = m[r][c].clone();
        for x in m[r].iter_mut() {
            *x = x.clone() / pivot.clone();
        }
        for i in 0..rows {
            if i == r || m[i][c].is_zero() {
                continue;
            }
            let f = m[i][c].clone();
            for j in 0..cols {
                let delta = f.clone() * m[r][j].clone();
                m[i][j] = m[i][j].clone() - delta;
            }
        }
        pivots.push(c);
        r += 1;
    }
    (m, pivots)
}

pub fn rank<S: Scalar>(m: Vec<Vec<S>>, tol: &Tolerance) -> usize {
    rref(m, tol).1.len()
}

/// The unique (up to scale) null vector of `m`, or the nullity when it is
/// not one-dimensional.
pub fn null_vector<S: Scalar>(
    m: Vec<Vec<S>>,
    tol: &Tolerance,
) -> std::result::Result<Vec<S>, usize> {
    let cols = m.first().map_or(0, Vec::len);
    let (red, pivots) = rref(m, tol);
    let nullity = cols - pivots.len();
    if nullity != 1 {
        return Err(nullity);
    }
    let free = (0..cols).find(|c| !pivots.contains(c)).unwrap();
    let mut v = vec![S::zero(); cols];
    v[free] = S::one();
    for (row, &pc) in pivots.iter().enumerate() {
        v[pc] = -red[row][free].clone();
    }
    Ok(v)
}

/// Real roots `(s : t)` of the binary quadratic `a s² + 2 b s t + c t²`.
#[derive(Debug, Clone, PartialEq)]
pub enum Roots<T> {
    None,
    Double(T),
    Pair(T, T),
}

impl<T> Roots<T> {
    pub fn len(&self) -> usize {
        match self {
            Roots::None => 0,
            Roots::Double(_) => 1,
            Roots::Pair(..) => 2,
        }
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, Roots::None)
    }

    pub fn into_vec(self) -> Vec<T> {
        match self {
            Roots::None => vec![],
            Roots::Double(x) => vec![x],
            Roots::Pair(x, y) => vec![x, y],
        }
    }

    pub fn try_map<U, E>(self, mut f: impl FnMut(T) -> std::result::Result<U, E>) -> std::result::Result<Roots<U>, E> {
        Ok(match self {
            Roots::None => Roots::None,
            Roots::Double(x) => Roots::Double(f(x)?),
            Roots::Pair(x, y) => Roots::Pair(f(x)?, f(y)?),
        })
    }
}

/// Solves `a s² + 2 b s t + c t² = 0` projectively.
///
/// Returns root pairs `(s, t)`; the caller must have excluded the
/// identically-zero form. Uses the cancellation-free pairing
/// `(c, q)` and `(q, a)` with `q = -b - sign(b) sqrt(b² - ac)`.
pub fn binary_quadratic<S: Scalar>(a: &S, b: &S, c: &S, tol: &Tolerance) -> Result<Roots<(S, S)>> {
    let bb = b.clone() * b.clone();
    let ac = a.clone() * c.clone();
    let disc = bb.clone() - ac.clone();
    let scale = bb.magnitude().max(ac.magnitude());
    if disc.negligible(scale, tol) {
        let r1 = (c.clone(), -b.clone());
        let r2 = (-b.clone(), a.clone());
        let n1 = r1.0.magnitude() + r1.1.magnitude();
        let n2 = r2.0.magnitude() + r2.1.magnitude();
        let pick = if (r1.0.is_zero() && r1.1.is_zero()) || n2 > n1 { r2 } else { r1 };
        return Ok(Roots::Double(pick));
    }
    if disc.is_negative() {
        return Ok(Roots::None);
    }
    let root = disc.try_sqrt().ok_or(Error::IrrationalResult)?;
    let q = if b.is_negative() { -b.clone() + root } else { -b.clone() - root };
    Ok(Roots::Pair((c.clone(), q.clone()), (q, a.clone())))
}
