//! 3×3 integer matrices acting on coordinate columns.

pub type Mat3 = [[i64; 3]; 3];

pub const IDENTITY: Mat3 = [[1, 0, 0], [0, 1, 0], [0, 0, 1]];

pub fn mul(a: &Mat3, b: &Mat3) -> Mat3 {
    let mut out = [[0i64; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = (0..3).map(|k| a[i][k] * b[k][j]).sum();
        }
    }
    out
}

pub fn transpose(a: &Mat3) -> Mat3 {
    let mut out = [[0i64; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = a[j][i];
        }
    }
    out
}

pub fn det(a: &Mat3) -> i64 {
    a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
        + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0])
}

pub fn adjugate(a: &Mat3) -> Mat3 {
    let mut out = [[0i64; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            let (r0, r1) = match j {
                0 => (1, 2),
                1 => (0, 2),
                _ => (0, 1),
            };
            let (c0, c1) = match i {
                0 => (1, 2),
                1 => (0, 2),
                _ => (0, 1),
            };
            let minor = a[r0][c0] * a[r1][c1] - a[r0][c1] * a[r1][c0];
            out[i][j] = if (i + j) % 2 == 0 { minor } else { -minor };
        }
    }
    out
}

/// Inverse of a matrix with determinant ±1.
pub fn unimodular_inverse(a: &Mat3) -> Option<Mat3> {
    let d = det(a);
    if d != 1 && d != -1 {
        return None;
    }
    Some(adjugate(a).map(|row| row.map(|x| x * d)))
}

pub fn from_columns(cols: [[i64; 3]; 3]) -> Mat3 {
    transpose(&cols)
}

pub fn column(a: &Mat3, j: usize) -> [i64; 3] {
    [a[0][j], a[1][j], a[2][j]]
}

pub fn apply(a: &Mat3, v: [i64; 3]) -> [i64; 3] {
    [0, 1, 2].map(|i| (0..3).map(|k| a[i][k] * v[k]).sum())
}

pub fn neg(a: &Mat3) -> Mat3 {
    a.map(|row| row.map(|x| -x))
}

pub fn cross(u: [i64; 3], v: [i64; 3]) -> [i64; 3] {
    [u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]]
}

pub fn det_columns(u: [i64; 3], v: [i64; 3], w: [i64; 3]) -> i64 {
    let c = cross(v, w);
    u[0] * c[0] + u[1] * c[1] + u[2] * c[2]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_roundtrip() {
        let a: Mat3 = [[1, 2, 0], [0, 1, 3], [1, 2, 1]];
        assert_eq!(det(&a), 1);
        let inv = unimodular_inverse(&a).unwrap();
        assert_eq!(mul(&a, &inv), IDENTITY);
        assert_eq!(mul(&inv, &a), IDENTITY);
        assert!(unimodular_inverse(&[[2, 0, 0], [0, 1, 0], [0, 0, 1]]).is_none());
    }
}
