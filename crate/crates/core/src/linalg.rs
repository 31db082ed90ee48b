//! Small dense linear-algebra helpers shared across modules, plus serde
//! adapters so vectors and matrices appear in JSON as plain arrays.

use nalgebra::{DMatrix, DVector};

pub type Vector = DVector<f64>;
pub type Matrix = DMatrix<f64>;

pub fn vector(coords: &[f64]) -> Vector {
    DVector::from_column_slice(coords)
}

/// Orthonormal basis (as columns) of the orthogonal complement of `v`
/// inside R^k. `v` must be nonzero.
pub fn complement_basis(v: &Vector) -> Matrix {
    let k = v.len();
    let u = v.normalize();
    let mut basis: Vec<Vector> = Vec::with_capacity(k.saturating_sub(1));
    for j in 0..k {
        if basis.len() + 1 == k {
            break;
        }
        let mut w = Vector::zeros(k);
        w[j] = 1.0;
        // two passes of Gram-Schmidt
        for _ in 0..2 {
            w -= &u * u.dot(&w);
            for b in &basis {
                w -= b * b.dot(&w);
            }
        }
        let norm = w.norm();
        if norm > 1e-6 {
            basis.push(w / norm);
        }
    }
    if basis.is_empty() {
        Matrix::zeros(k, 0)
    } else {
        Matrix::from_columns(&basis)
    }
}

/// Orthogonal matrix mapping unit vector `from` onto unit vector `to`
/// (a Householder reflection, or the identity when they already agree).
pub fn reflect_onto(from: &Vector, to: &Vector) -> Matrix {
    let n = from.len();
    let v = from - to;
    let vv = v.norm_squared();
    if vv < 1e-30 {
        return Matrix::identity(n, n);
    }
    Matrix::identity(n, n) - (&v * v.transpose()) * (2.0 / vv)
}

/// Lexicographic comparison of coordinate vectors.
pub fn lex_cmp(a: &Vector, b: &Vector) -> std::cmp::Ordering {
    for (x, y) in a.iter().zip(b.iter()) {
        match x.partial_cmp(y) {
            Some(std::cmp::Ordering::Equal) | None => continue,
            Some(o) => return o,
        }
    }
    std::cmp::Ordering::Equal
}

/// Orthogonal matrix closest to `m` in Frobenius norm (polar factor via SVD).
pub fn nearest_orthogonal(m: &Matrix) -> Matrix {
    let svd = m.clone().svd(true, true);
    let u = svd.u.expect("svd u");
    let v_t = svd.v_t.expect("svd v_t");
    u * v_t
}

pub fn orthogonality_defect(m: &Matrix) -> f64 {
    let n = m.ncols();
    (m.transpose() * m - Matrix::identity(n, n)).abs().max()
}

pub(crate) mod serde_vector {
    use super::Vector;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &Vector, s: S) -> Result<S::Ok, S::Error> {
        v.as_slice().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vector, D::Error> {
        let coords = Vec::<f64>::deserialize(d)?;
        Ok(Vector::from_vec(coords))
    }
}

pub(crate) mod serde_vectors {
    use super::Vector;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(vs: &[Vector], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(vs.iter().map(|v| v.as_slice()))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vector>, D::Error> {
        let rows = Vec::<Vec<f64>>::deserialize(d)?;
        Ok(rows.into_iter().map(Vector::from_vec).collect())
    }
}

/// Matrices as arrays of rows.
pub(crate) mod serde_matrix {
    use super::Matrix;
    use serde::de::Error as _;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(m: &Matrix, s: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<Vec<f64>> = m.row_iter().map(|r| r.iter().copied().collect()).collect();
        s.collect_seq(rows)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Matrix, D::Error> {
        let rows = Vec::<Vec<f64>>::deserialize(d)?;
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(D::Error::custom("ragged matrix rows"));
        }
        Ok(Matrix::from_row_iterator(nrows, ncols, rows.into_iter().flatten()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complement_of_last_axis_is_leading_axes() {
        let b = complement_basis(&vector(&[0.0, 0.0, 2.0]));
        assert_eq!(b.ncols(), 2);
        assert!((b.column(0) - vector(&[1.0, 0.0, 0.0])).norm() < 1e-15);
        assert!((b.column(1) - vector(&[0.0, 1.0, 0.0])).norm() < 1e-15);
    }

    #[test]
    fn complement_is_orthonormal() {
        let v = vector(&[0.3, -1.2, 0.7, 2.0]);
        let b = complement_basis(&v);
        assert_eq!(b.ncols(), 3);
        assert!(orthogonality_defect(&b) < 1e-14);
        assert!((b.transpose() * v).norm() < 1e-14);
    }

    #[test]
    fn reflection_maps_vector() {
        let from = vector(&[0.6, 0.0, 0.8]);
        let to = vector(&[0.0, 0.0, 1.0]);
        let h = reflect_onto(&from, &to);
        assert!((&h * from - to).norm() < 1e-15);
        assert!(orthogonality_defect(&h) < 1e-15);
    }
}
