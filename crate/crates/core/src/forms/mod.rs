//! Integral ternary quadratic forms `ax² + by² + cz² + ryz + sxz + txy`.

mod count;
mod isometry;
pub mod matrix;
mod reduce;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arith::gcd_all;
use crate::error::{Error, Result};

pub use count::{for_each_vector, represent_count, theta_counts};
pub use isometry::{automorphisms, is_equivalent, isometries, IsometryWitness};
pub use matrix::Mat3;
pub use reduce::{canonical, greedy_reduce, reduce};

/// Coefficients larger than this in absolute value are rejected.
pub const COEFF_LIMIT: i64 = 1 << 24;

/// The sextuple `(a, b, c, r, s, t)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TernaryForm {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub r: i64,
    pub s: i64,
    pub t: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormInvariants {
    pub discriminant: i64,
    pub divisor: i64,
    pub level: i64,
    pub primitive: bool,
    pub aut_count: usize,
}

impl TernaryForm {
    pub const fn new(a: i64, b: i64, c: i64, r: i64, s: i64, t: i64) -> Self {
        TernaryForm { a, b, c, r, s, t }
    }

    pub fn from_array(v: [i64; 6]) -> Self {
        TernaryForm::new(v[0], v[1], v[2], v[3], v[4], v[5])
    }

    pub fn to_array(&self) -> [i64; 6] {
        [self.a, self.b, self.c, self.r, self.s, self.t]
    }

    /// Gram matrix with diagonal `(2a, 2b, 2c)`; `f(v) = vᵀMv / 2`.
    pub fn gram(&self) -> Mat3 {
        let TernaryForm { a, b, c, r, s, t } = *self;
        [[2 * a, t, s], [t, 2 * b, r], [s, r, 2 * c]]
    }

    pub fn from_gram(m: &[[i128; 3]; 3]) -> Result<Self> {
        if m[0][0] % 2 != 0 || m[1][1] % 2 != 0 || m[2][2] % 2 != 0 {
            return Err(Error::InvalidParameter("Gram matrix has odd diagonal".into()));
        }
        let cv = |x: i128| -> Result<i64> {
            i64::try_from(x)
                .ok()
                .filter(|v| v.abs() <= COEFF_LIMIT)
                .ok_or(Error::Overflow("form coefficient"))
        };
        Ok(TernaryForm::new(
            cv(m[0][0] / 2)?,
            cv(m[1][1] / 2)?,
            cv(m[2][2] / 2)?,
            cv(m[1][2])?,
            cv(m[0][2])?,
            cv(m[0][1])?,
        ))
    }

    pub fn eval(&self, v: [i64; 3]) -> i128 {
        let [x, y, z] = v.map(i128::from);
        let TernaryForm { a, b, c, r, s, t } = *self;
        let (a, b, c, r, s, t) = (a as i128, b as i128, c as i128, r as i128, s as i128, t as i128);
        a * x * x + b * y * y + c * z * z + r * y * z + s * x * z + t * x * y
    }

    /// Polar form `B(u, v) = uᵀMv = f(u+v) - f(u) - f(v)`.
    pub fn bilinear(&self, u: [i64; 3], v: [i64; 3]) -> i128 {
        let m = self.gram();
        let mut acc = 0i128;
        for i in 0..3 {
            for j in 0..3 {
                acc += u[i] as i128 * m[i][j] as i128 * v[j] as i128;
            }
        }
        acc
    }

    /// `4abc + rst - ar² - bs² - ct²`, i.e. det(M)/2.
    pub fn discriminant_i128(&self) -> i128 {
        let [a, b, c, r, s, t] = self.to_array().map(i128::from);
        4 * a * b * c + r * s * t - a * r * r - b * s * s - c * t * t
    }

    pub fn discriminant(&self) -> Result<i64> {
        i64::try_from(self.discriminant_i128()).map_err(|_| Error::Overflow("discriminant"))
    }

    /// The six cofactor quantities `(M11, M22, M33, M23, M13, M12)`.
    pub fn cofactors(&self) -> [i128; 6] {
        let [a, b, c, r, s, t] = self.to_array().map(i128::from);
        [
            4 * b * c - r * r,
            4 * a * c - s * s,
            4 * a * b - t * t,
            s * t - 2 * a * r,
            r * t - 2 * b * s,
            r * s - 2 * c * t,
        ]
    }

    /// gcd(M11, M22, M33, 2M23, 2M13, 2M12).
    pub fn divisor(&self) -> Result<i64> {
        let c = self.cofactors();
        let vals = [c[0], c[1], c[2], 2 * c[3], 2 * c[4], 2 * c[5]];
        let mut g = 0i128;
        for v in vals {
            g = num_integer::Integer::gcd(&g, &v);
        }
        i64::try_from(g).map_err(|_| Error::Overflow("divisor"))
    }

    /// Smallest N with N·M⁻¹ an even integral matrix.
    pub fn level(&self) -> Result<i64> {
        self.check_positive_definite()?;
        let d = self.discriminant()? as i128;
        let m = self.divisor()? as i128;
        let four_d = 4 * d;
        let smallest = four_d / num_integer::Integer::gcd(&four_d, &m);
        debug_assert_eq!(four_d % m, 0, "divisor does not divide 4d");
        debug_assert_eq!(smallest * m, four_d);
        i64::try_from(smallest).map_err(|_| Error::Overflow("level"))
    }

    pub fn content(&self) -> i64 {
        gcd_all(&self.to_array())
    }

    pub fn is_primitive(&self) -> bool {
        self.content() == 1
    }

    pub fn scaled(&self, k: i64) -> Self {
        TernaryForm::from_array(self.to_array().map(|x| x * k))
    }

    pub fn is_positive_definite(&self) -> bool {
        self.check_positive_definite().is_ok()
    }

    /// Leading principal minors of M must be positive.
    pub fn check_positive_definite(&self) -> Result<()> {
        if self.to_array().iter().any(|x| x.abs() > COEFF_LIMIT) {
            return Err(Error::Overflow("coefficient exceeds limit"));
        }
        let d = self.discriminant_i128();
        if d == 0 {
            return Err(Error::Degenerate);
        }
        let [a, b, _, _, _, t] = self.to_array().map(i128::from);
        if a <= 0 || 4 * a * b - t * t <= 0 || d < 0 {
            return Err(Error::NotPositiveDefinite(self.to_string()));
        }
        Ok(())
    }

    /// Form in the basis given by the columns of `u`: Uᵀ M U.
    pub fn transform(&self, u: &Mat3) -> Result<TernaryForm> {
        let m = self.gram();
        let mut out = [[0i128; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                let mut acc = 0i128;
                for k in 0..3 {
                    for l in 0..3 {
                        acc += u[k][i] as i128 * m[k][l] as i128 * u[l][j] as i128;
                    }
                }
                out[i][j] = acc;
            }
        }
        TernaryForm::from_gram(&out)
    }

    pub fn invariants(&self) -> Result<FormInvariants> {
        self.check_positive_definite()?;
        let discriminant = self.discriminant()?;
        let divisor = self.divisor()?;
        let level = self.level()?;
        if level as i128 * divisor as i128 != 4 * discriminant as i128 {
            return Err(Error::InvalidParameter(format!(
                "level {level} and divisor {divisor} inconsistent with discriminant {discriminant}"
            )));
        }
        Ok(FormInvariants {
            discriminant,
            divisor,
            level,
            primitive: self.is_primitive(),
            aut_count: automorphisms(self)?.len(),
        })
    }
}

impl fmt::Display for TernaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{},{},{},{}", self.a, self.b, self.c, self.r, self.s, self.t)
    }
}

/// Parses the canonical encoding `a,b,c,r,s,t`: six signed decimal
/// integers separated by commas, no whitespace.
impl FromStr for TernaryForm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |why: &str| Error::Parse(format!("form {s:?}: {why}"));
        let parts: Vec<&str> = s.split(',').collect();
        if parts.len() != 6 {
            return Err(bad("expected six comma-separated integers"));
        }
        let mut v = [0i64; 6];
        for (slot, p) in v.iter_mut().zip(&parts) {
            let digits = p.strip_prefix('-').unwrap_or(p);
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad("not an integer"));
            }
            let x: i64 = p.parse().map_err(|_| bad("integer out of range"))?;
            if x.abs() > COEFF_LIMIT {
                return Err(bad("coefficient too large"));
            }
            *slot = x;
        }
        Ok(TernaryForm::from_array(v))
    }
}

impl Serialize for TernaryForm {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for TernaryForm {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
