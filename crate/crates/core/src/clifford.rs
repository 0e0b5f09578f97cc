//! Quaternion orders: the even Clifford algebra of a ternary form, the
//! dual form `f_O`, and the trace-zero forms `f_{O⁰}` and `f_{S⁰}`.

use serde::{Deserialize, Serialize};

use crate::arith::isqrt;
use crate::error::{Error, Result};
use crate::forms::{automorphisms, TernaryForm};
use crate::lattice::ShortVectors;
use crate::rational::Rational;

/// Coordinates with respect to the order's basis `(1, e1, e2, e3)`.
pub type Element = [i64; 4];

/// Largest absolute structure constant accepted from outside input.
pub const ORDER_ENTRY_LIMIT: i64 = 1 << 20;

/// A rank-4 order with basis `(1, e1, e2, e3)`: `e_p e_q = Σ mult[p][q][r] e_r`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuaternionOrder {
    pub basis: [String; 4],
    pub mult: [[[i64; 4]; 4]; 4],
    pub trace: [i64; 4],
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawOrder {
    #[serde(default = "default_labels")]
    basis: [String; 4],
    mult: [[[i64; 4]; 4]; 4],
    trace: [i64; 4],
}

fn default_labels() -> [String; 4] {
    ["1", "i", "j", "k"].map(String::from)
}

impl<'de> Deserialize<'de> for QuaternionOrder {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = RawOrder::deserialize(d)?;
        QuaternionOrder::new(raw.basis, raw.mult, raw.trace).map_err(serde::de::Error::custom)
    }
}

fn bad(msg: impl Into<String>) -> Error {
    Error::OrderInvariant(msg.into())
}

impl QuaternionOrder {
    /// Validated constructor: bounded entries, `e0 = 1`, associativity,
    /// and `x² - tr(x) x + n(x) = 0` on the basis.
    pub fn new(basis: [String; 4], mult: [[[i64; 4]; 4]; 4], trace: [i64; 4]) -> Result<Self> {
        let flat = mult.iter().flatten().flatten().chain(trace.iter());
        if flat.into_iter().any(|x| x.abs() > ORDER_ENTRY_LIMIT) {
            return Err(bad("structure constant out of range"));
        }
        let o = QuaternionOrder { basis, mult, trace };
        o.check()?;
        Ok(o)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("order serializes")
    }

    fn check(&self) -> Result<()> {
        if self.trace[0] != 2 {
            return Err(bad("tr(1) must be 2"));
        }
        for q in 0..4 {
            let mut e = [0i64; 4];
            e[q] = 1;
            if self.mult[0][q] != e || self.mult[q][0] != e {
                return Err(bad("first basis element is not the identity"));
            }
        }
        for p in 0..4 {
            for q in 0..4 {
                for r in 0..4 {
                    let left = self.mul_wide(&self.mul_basis(p, q), &unit_wide(r));
                    let right = self.mul_wide(&unit_wide(p), &self.mul_basis(q, r));
                    if left != right {
                        return Err(bad(format!("not associative on basis triple ({p},{q},{r})")));
                    }
                }
            }
        }
        for p in 1..4 {
            // e² - tr(e) e must be a scalar
            let mut sq = self.mul_basis(p, p);
            sq[p] -= self.trace[p] as i128;
            if sq[1..].iter().any(|&x| x != 0) {
                return Err(bad(format!("basis element {p} has no integral quadratic relation")));
            }
            if self.tr_wide(&sq) != 2 * sq[0] {
                return Err(bad("trace is not the reduced trace"));
            }
        }
        Ok(())
    }

    fn mul_basis(&self, p: usize, q: usize) -> [i128; 4] {
        self.mult[p][q].map(i128::from)
    }

    fn mul_wide(&self, x: &[i128; 4], y: &[i128; 4]) -> [i128; 4] {
        let mut out = [0i128; 4];
        for p in 0..4 {
            if x[p] == 0 {
                continue;
            }
            for q in 0..4 {
                if y[q] == 0 {
                    continue;
                }
                for r in 0..4 {
                    out[r] += x[p] * y[q] * self.mult[p][q][r] as i128;
                }
            }
        }
        out
    }

    fn tr_wide(&self, x: &[i128; 4]) -> i128 {
        (0..4).map(|p| x[p] * self.trace[p] as i128).sum()
    }

    pub fn mul(&self, x: &Element, y: &Element) -> Result<Element> {
        let w = self.mul_wide(&x.map(i128::from), &y.map(i128::from));
        let mut out = [0i64; 4];
        for r in 0..4 {
            out[r] = i64::try_from(w[r]).map_err(|_| Error::Overflow("order product"))?;
        }
        Ok(out)
    }

    pub fn tr(&self, x: &Element) -> i128 {
        self.tr_wide(&x.map(i128::from))
    }

    /// `tr(e_p e_q)`.
    pub fn trace_matrix(&self) -> [[i128; 4]; 4] {
        std::array::from_fn(|p| std::array::from_fn(|q| self.tr_wide(&self.mul_basis(p, q))))
    }

    /// Gram matrix of `(x, y) ↦ tr(x ȳ) = tr(x) tr(y) - tr(xy)`, so that
    /// `n(x) = ½ xᵀ G x`.
    pub fn norm_gram(&self) -> [[i64; 4]; 4] {
        let t = self.trace_matrix();
        std::array::from_fn(|p| {
            std::array::from_fn(|q| (self.trace[p] as i128 * self.trace[q] as i128 - t[p][q]) as i64)
        })
    }

    pub fn norm(&self, x: &Element) -> i128 {
        let g = self.norm_gram();
        let mut s = 0i128;
        for p in 0..4 {
            for q in 0..4 {
                s += g[p][q] as i128 * x[p] as i128 * x[q] as i128;
            }
        }
        s / 2
    }

    pub fn is_definite(&self) -> bool {
        let g = self.norm_gram();
        let rows: Vec<Vec<i64>> = g.iter().map(|r| r.to_vec()).collect();
        ShortVectors::new(&rows).is_ok()
    }

    /// Reduced discriminant: `det(tr(e_p e_q)) = -discrd²`.
    pub fn discrd(&self) -> Result<i64> {
        let det = det4(&self.trace_matrix());
        if det >= 0 {
            return Err(bad(format!("trace form determinant {det} is not negative")));
        }
        let root = isqrt(-det);
        if root * root != -det {
            return Err(bad(format!("-det {} is not a square", -det)));
        }
        i64::try_from(root).map_err(|_| Error::Overflow("discrd"))
    }

    /// Basis of the dual lattice for `(x, y) ↦ tr(xy)`, as rational
    /// coordinates; entry q is dual to basis element q.
    pub fn dual_basis(&self) -> Result<[[Rational; 4]; 4]> {
        let t = self.trace_matrix();
        invert4(&t).ok_or_else(|| bad("trace form is degenerate"))
    }
}

fn unit_wide(p: usize) -> [i128; 4] {
    let mut e = [0i128; 4];
    e[p] = 1;
    e
}

/// Fraction-free determinant.
fn det4(m: &[[i128; 4]; 4]) -> i128 {
    let mut a = *m;
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..4 {
        if a[k][k] == 0 {
            match (k + 1..4).find(|&i| a[i][k] != 0) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..4 {
            for j in k + 1..4 {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[3][3]
}

fn invert4(m: &[[i128; 4]; 4]) -> Option<[[Rational; 4]; 4]> {
    let mut a: Vec<Vec<Rational>> = (0..4)
        .map(|i| {
            (0..8)
                .map(|j| {
                    if j < 4 {
                        Rational::from_integer(m[i][j] as i64)
                    } else {
                        Rational::from_integer((j - 4 == i) as i64)
                    }
                })
                .collect()
        })
        .collect();
    for k in 0..4 {
        let piv = (k..4).find(|&i| !a[i][k].is_zero())?;
        a.swap(piv, k);
        let inv = a[k][k].recip();
        for j in 0..8 {
            a[k][j] = a[k][j].clone() * &inv;
        }
        for i in 0..4 {
            if i != k && !a[i][k].is_zero() {
                let factor = a[i][k].clone();
                for j in 0..8 {
                    let sub = factor.clone() * &a[k][j];
                    a[i][j] = a[i][j].clone() - sub;
                }
            }
        }
    }
    Some(std::array::from_fn(|i| std::array::from_fn(|j| a[i][j + 4].clone())))
}

/// Even Clifford algebra `C₀(f)` with basis `(1, i, j, k)`:
/// `i² = ri - bc`, `j² = sj - ac`, `k² = tk - ab`,
/// `jk = a(r - i)`, `ki = b(s - j)`, `ij = c(t - k)`.
pub fn even_clifford(f: &TernaryForm) -> Result<QuaternionOrder> {
    if f.discriminant_i128() == 0 {
        return Err(Error::Degenerate);
    }
    let [a, b, c, r, s, t] = f.to_array();
    let mut m = [[[0i64; 4]; 4]; 4];
    for q in 0..4 {
        m[0][q][q] = 1;
        m[q][0][q] = 1;
    }
    m[1][1] = [-b * c, r, 0, 0];
    m[2][2] = [-a * c, 0, s, 0];
    m[3][3] = [-a * b, 0, 0, t];
    m[2][3] = [a * r, -a, 0, 0];
    m[3][1] = [b * s, 0, -b, 0];
    m[1][2] = [c * t, 0, 0, -c];
    m[3][2] = [-t * s, a, t, s];
    m[1][3] = [-r * t, t, b, r];
    m[2][1] = [-r * s, s, r, c];
    let order = QuaternionOrder::new(default_labels(), m, [2, r, s, t])?;
    debug_assert_eq!(order.discrd().ok(), f.discriminant().ok());
    Ok(order)
}

/// `f_O = discrd(O) · n(x f1 + y f2 + z f3)` with `f1, f2, f3` the
/// trace-zero part of the dual basis.
pub fn dual_form(o: &QuaternionOrder) -> Result<TernaryForm> {
    let disc = o.discrd()?;
    let dual = o.dual_basis()?;
    let g = o.norm_gram();
    let pair = |x: &[Rational; 4], y: &[Rational; 4]| -> Rational {
        let mut s = Rational::zero();
        for p in 0..4 {
            for q in 0..4 {
                if g[p][q] != 0 {
                    s += x[p].clone() * &y[q] * g[p][q];
                }
            }
        }
        s * disc
    };
    let half = Rational::new(1, 2);
    let coeffs = [
        pair(&dual[1], &dual[1]) * &half,
        pair(&dual[2], &dual[2]) * &half,
        pair(&dual[3], &dual[3]) * &half,
        pair(&dual[2], &dual[3]),
        pair(&dual[1], &dual[3]),
        pair(&dual[1], &dual[2]),
    ];
    let mut out = [0i64; 6];
    for (slot, v) in out.iter_mut().zip(coeffs.iter()) {
        *slot = v.to_i64().ok_or_else(|| bad(format!("dual form coefficient {v} is not integral")))?;
    }
    Ok(TernaryForm::from_array(out))
}

/// `(α1, α2, α3)` in the order's coordinates with traces `(0, 0, 1)`;
/// together with 1 they form a basis.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NormalizedBasis {
    pub alphas: [Element; 3],
}

/// Shifts traces into `{0, 1}` and then clears all but one odd trace.
pub fn normalize_basis(o: &QuaternionOrder) -> Result<NormalizedBasis> {
    let mut alphas: Vec<Element> = (1..4)
        .map(|p| {
            let mut e = [0i64; 4];
            e[p] = 1;
            e[0] = -o.trace[p].div_euclid(2);
            e
        })
        .collect();
    let tr = |x: &Element| o.tr(x);
    let odd: Vec<usize> = (0..3).filter(|&i| tr(&alphas[i]) == 1).collect();
    let Some(&last) = odd.last() else {
        return Err(bad("all basis traces are even, so this is not an order"));
    };
    let pivot = alphas[last];
    for &i in &odd[..odd.len() - 1] {
        for k in 0..4 {
            alphas[i][k] -= pivot[k];
        }
    }
    let mut rest: Vec<Element> = (0..3).filter(|&i| i != last).map(|i| alphas[i]).collect();
    rest.push(pivot);
    let alphas = [rest[0], rest[1], rest[2]];
    debug_assert!(alphas.iter().map(tr).eq([0, 0, 1]));
    Ok(NormalizedBasis { alphas })
}

fn norm_form_on(o: &QuaternionOrder, v: [Element; 3]) -> Result<TernaryForm> {
    let g = o.norm_gram();
    let b = |x: &Element, y: &Element| -> i128 {
        let mut s = 0i128;
        for p in 0..4 {
            for q in 0..4 {
                s += g[p][q] as i128 * x[p] as i128 * y[q] as i128;
            }
        }
        s
    };
    let coeffs = [b(&v[0], &v[0]) / 2, b(&v[1], &v[1]) / 2, b(&v[2], &v[2]) / 2, b(&v[1], &v[2]), b(&v[0], &v[2]), b(&v[0], &v[1])];
    let mut out = [0i64; 6];
    for (slot, &x) in out.iter_mut().zip(coeffs.iter()) {
        *slot = i64::try_from(x).map_err(|_| Error::Overflow("trace-zero form"))?;
    }
    Ok(TernaryForm::from_array(out))
}

fn shifted(alpha3: &Element) -> Element {
    let mut v = alpha3.map(|x| 2 * x);
    v[0] -= 1;
    v
}

/// `f_{O⁰} = n(x α1 + y α2 + z (2α3 - 1))`.
pub fn trace_zero_form_o0(o: &QuaternionOrder) -> Result<TernaryForm> {
    let nb = normalize_basis(o)?;
    let [a1, a2, a3] = nb.alphas;
    norm_form_on(o, [a1, a2, shifted(&a3)])
}

/// `f_{S⁰} = n(2x α1 + 2y α2 + z (2α3 - 1))` for `S = Z + 2O`.
pub fn trace_zero_form_s0(o: &QuaternionOrder) -> Result<TernaryForm> {
    let nb = normalize_basis(o)?;
    let [a1, a2, a3] = nb.alphas;
    norm_form_on(o, [a1.map(|x| 2 * x), a2.map(|x| 2 * x), shifted(&a3)])
}

/// Number of `x` in the order with `tr(x) = r` and `n(x) = n`.
pub fn rho_count(o: &QuaternionOrder, n: i64, r: i64) -> Result<u64> {
    let g = o.norm_gram();
    let rows: Vec<Vec<i64>> = g.iter().map(|row| row.to_vec()).collect();
    let sv = ShortVectors::new(&rows).map_err(|_| Error::NotPositiveDefinite("order is not definite".into()))?;
    let mut count = 0u64;
    sv.for_each(n, |x, val| {
        if val == n && (0..4).map(|p| x[p] as i128 * o.trace[p] as i128).sum::<i128>() == r as i128 {
            count += 1;
        }
    });
    Ok(count)
}

/// `card(Aut(O))`, taken as `|Aut(f_O)| / 2`.
pub fn card_aut(o: &QuaternionOrder) -> Result<u64> {
    let f = dual_form(o)?;
    Ok(automorphisms(&f)?.len() as u64 / 2)
}
