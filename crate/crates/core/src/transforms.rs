//! Lehman's normal form and the maps φ_p, φ₂, plus Watson's λ_m.

use serde::Serialize;

use crate::arith::{is_prime, is_squarefree, mod_inverse, valuation};
use crate::error::{Error, Result};
use crate::forms::matrix::{self, Mat3, IDENTITY};
use crate::forms::{greedy_reduce, TernaryForm};
use crate::lattice::Hermite;
use crate::local::odd_squarefree_quarter;

/// `f` rewritten as `(p^g a, p^{h-g} b, c, p^{h-g} r, p^g s, p^g t)` with
/// `p ∤ ac`, where `g = v_p(level)` and `h = v_p(d)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LehmanNormalForm {
    pub form: TernaryForm,
    pub p: i64,
    pub g: u32,
    pub h: u32,
    /// `form = f.transform(transform)`.
    pub transform: Mat3,
}

impl LehmanNormalForm {
    /// True when `form` has the divisibility pattern for `(p, g, h)`.
    pub fn has_pattern(form: &TernaryForm, p: i64, g: u32, h: u32) -> bool {
        let pg = (p as i128).pow(g);
        let phg = (p as i128).pow(h.saturating_sub(g));
        let [a, b, c, r, s, t] = form.to_array().map(i128::from);
        a % pg == 0
            && (a / pg) % p as i128 != 0
            && c % p as i128 != 0
            && b % phg == 0
            && r % phg == 0
            && s % pg == 0
            && t % pg == 0
    }
}

fn check_odd_prime(p: i64) -> Result<()> {
    if p == 2 || !is_prime(p) {
        return Err(Error::InvalidParameter(format!("{p} is not an odd prime")));
    }
    Ok(())
}

/// Nearest column operation `col_j -= lambda * col_i`.
fn elementary(i: usize, j: usize, lambda: i64) -> Mat3 {
    let mut e = IDENTITY;
    e[i][j] = -lambda;
    e
}

fn permutation(order: [usize; 3]) -> Mat3 {
    let mut m = [[0i64; 3]; 3];
    for (col, &row) in order.iter().enumerate() {
        m[row][col] = 1;
    }
    m
}

/// Representative of `x mod m` in `(-m/2, m/2]`.
fn symmetric(x: i128, m: i128) -> i64 {
    let r = x.rem_euclid(m);
    (if 2 * r > m { r - m } else { r }) as i64
}

/// Gauss reduction of the binary part `(a, b, t)` by operations on the
/// first two columns; `s` and `r` only mix linearly.
fn reduce_binary(f: &TernaryForm) -> Result<Mat3> {
    let mut u = IDENTITY;
    let mut cur = *f;
    loop {
        if cur.a > cur.b {
            let swap = permutation([1, 0, 2]);
            u = matrix::mul(&u, &swap);
            cur = cur.transform(&swap)?;
        }
        let (a, t) = (cur.a as i128, cur.t as i128);
        if t.abs() <= a {
            return Ok(u);
        }
        let k = (2 * t + 2 * a).div_euclid(4 * a) as i64;
        let e = elementary(0, 1, k);
        u = matrix::mul(&u, &e);
        cur = cur.transform(&e)?;
    }
}

/// Lehman normal form at an odd prime dividing the level.
pub fn lehman_normal_form(f: &TernaryForm, p: i64) -> Result<LehmanNormalForm> {
    check_odd_prime(p)?;
    f.check_positive_definite()?;
    let level = f.level()?;
    if level % p != 0 {
        return Err(Error::PrimeDoesNotDivideLevel { p, level });
    }
    let g = valuation(level as i128, p);
    let h = valuation(f.discriminant_i128(), p);
    if LehmanNormalForm::has_pattern(f, p, g, h) {
        return Ok(LehmanNormalForm { form: *f, p, g, h, transform: IDENTITY });
    }
    let (base, start) = greedy_reduce(f)?;
    // s, r cleared mod p^M leave the binary part correct mod p^{2M}
    let modulus = (p as i128).pow(g.max(h - g).max(1));
    let pm = p as i128;
    let unit = |x: i128| x.rem_euclid(pm) != 0;

    // a vector of unit norm goes to the third slot
    let candidates: [(Mat3, [i64; 3]); 6] = [
        (IDENTITY, [0, 0, 1]),
        (permutation([2, 1, 0]), [1, 0, 0]),
        (permutation([0, 2, 1]), [0, 1, 0]),
        ([[1, 0, 1], [0, 0, 1], [0, 1, 0]], [1, 1, 0]),
        ([[1, 0, 1], [0, 1, 0], [0, 0, 1]], [1, 0, 1]),
        ([[1, 0, 0], [0, 1, 1], [0, 0, 1]], [0, 1, 1]),
    ];
    let mut u = candidates
        .iter()
        .find(|(_, v)| unit(base.eval(*v)))
        .map(|(m, _)| *m)
        .ok_or_else(|| Error::InvalidParameter(format!("{f} is not primitive at {p}")))?;
    let mut cur = base.transform(&u)?;
    debug_assert!(unit(cur.c as i128));

    let inv_2c = mod_inverse(2 * cur.c as i128, modulus).expect("2c is a unit");
    for (slot, coeff) in [(0usize, cur.s), (1usize, cur.r)] {
        let lambda = symmetric(coeff as i128 * inv_2c, modulus);
        u = matrix::mul(&u, &elementary(2, slot, lambda));
    }
    cur = base.transform(&u)?;
    u = matrix::mul(&u, &reduce_binary(&cur)?);
    cur = base.transform(&u)?;

    // binary part: the element of least valuation goes to the second slot
    let v = |x: i128| if x == 0 { u32::MAX } else { valuation(x, p) };
    let norms = [cur.a as i128, cur.b as i128, (cur.a + cur.b + cur.t) as i128];
    let least = (0..3).min_by_key(|&i| (v(norms[i]), i)).expect("three candidates");
    let shuffle: Mat3 = match least {
        0 => permutation([1, 0, 2]),
        1 => IDENTITY,
        _ => [[1, 1, 0], [0, 1, 0], [0, 0, 1]],
    };
    u = matrix::mul(&u, &shuffle);
    cur = base.transform(&u)?;
    let alpha = v(cur.b as i128);
    let scale = pm.pow(alpha);
    let b_unit = (2 * cur.b as i128) / scale;
    let beta = v(4 * cur.a as i128 * cur.b as i128 - (cur.t as i128).pow(2)) as i64;
    let precision = 1.max(g as i64 - alpha as i64).max((beta - 2 * alpha as i64) / 2 + 1);
    let small = pm.pow(precision as u32);
    let lambda = symmetric((cur.t as i128 / scale) * mod_inverse(b_unit, small).expect("unit"), small);
    u = matrix::mul(&u, &elementary(1, 0, lambda));
    cur = base.transform(&u)?;

    if !LehmanNormalForm::has_pattern(&cur, p, g, h) {
        return Err(Error::InvalidParameter(format!("no normal form for {f} at {p} (g={g}, h={h})")));
    }
    Ok(LehmanNormalForm { form: cur, p, g, h, transform: matrix::mul(&start, &u) })
}

fn scale_exact(x: i64, p: i64, e: i32) -> Result<i64> {
    let x = x as i128;
    let q = (p as i128).pow(e.unsigned_abs());
    let out = if e >= 0 {
        x * q
    } else if x % q == 0 {
        x / q
    } else {
        return Err(Error::InvalidParameter("coefficient not divisible as required".into()));
    };
    i64::try_from(out).map_err(|_| Error::Overflow("phi_p coefficient"))
}

/// Lehman's map at an odd prime p dividing the level:
/// `p^h d' ↦ p^{3g-h} d'`, same level, same |Aut| and anisotropy.
pub fn phi_p(f: &TernaryForm, p: i64) -> Result<TernaryForm> {
    let nf = lehman_normal_form(f, p)?;
    let (g, h) = (nf.g as i32, nf.h as i32);
    let [a, b, c, r, s, t] = nf.form.to_array();
    let image = TernaryForm::new(
        scale_exact(a, p, -g)?,
        scale_exact(b, p, 3 * g - 2 * h)?,
        scale_exact(c, p, g)?,
        scale_exact(r, p, 2 * g - h)?,
        s,
        scale_exact(t, p, g - h)?,
    );
    image.check_positive_definite()?;
    Ok(image)
}

/// `φ₂ : C(4N, N²/N_r) → C(4N, 16N²/N_r)`.
///
/// The radical of the Gram matrix mod 2 becomes the first basis vector;
/// the other two are doubled.
pub fn phi_2(f: &TernaryForm) -> Result<TernaryForm> {
    f.check_positive_definite()?;
    let level = f.level()?;
    let n = odd_squarefree_quarter(level)?;
    let d = f.discriminant()?;
    if (n * n) % d != 0 || !is_squarefree(n * n / d) || n % (n * n / d) != 0 {
        return Err(Error::UnsupportedDiscriminant { level, d });
    }
    let rad = [f.r.rem_euclid(2), f.s.rem_euclid(2), f.t.rem_euclid(2)];
    let pivot = rad.iter().position(|&x| x == 1).ok_or(Error::UnsupportedDiscriminant { level, d })?;
    let others: Vec<usize> = (0..3).filter(|&i| i != pivot).collect();
    let mut cols = [[0i64; 3]; 3];
    cols[0] = rad;
    cols[1][others[0]] = 1;
    cols[2][others[1]] = 1;
    let u = matrix::from_columns(cols);
    let g = f.transform(&u)?;
    debug_assert!(g.a % 2 == 1 && g.s % 2 == 0 && g.t % 2 == 0);
    g.transform(&[[1, 0, 0], [0, 2, 0], [0, 0, 2]])
}

/// Result of Watson's transformation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WatsonImage {
    pub form: TernaryForm,
    /// Columns span `Λ_m(f)`.
    pub basis: Mat3,
    pub m: i64,
    /// Only m = 4 (and the trivial m = 1) carry the class-bijection guarantees.
    pub experimental: bool,
}

/// Largest modulus accepted by [`watson`]; the sublattice is found by
/// scanning residues mod m.
pub const WATSON_MAX_MODULUS: i64 = 200;

/// `λ_m(f)`: `g(y) = f(By)/m` for a basis `B` of
/// `Λ_m(f) = {x : f(x+z) ≡ f(z) (mod m) for all z}`.
pub fn watson(f: &TernaryForm, m: i64) -> Result<WatsonImage> {
    f.check_positive_definite()?;
    if !(1..=WATSON_MAX_MODULUS).contains(&m) {
        return Err(Error::InvalidParameter(format!("modulus {m} outside 1..={WATSON_MAX_MODULUS}")));
    }
    let gram = f.gram();
    let mut lattice = Hermite::new(3);
    for i in 0..3 {
        let mut e = [0i128; 3];
        e[i] = m as i128;
        lattice.insert(&e);
    }
    let mm = m as i128;
    for x in 0..m {
        for y in 0..m {
            for z in 0..m {
                let v = [x, y, z];
                let in_kernel =
                    (0..3).all(|i| (0..3).map(|j| gram[i][j] as i128 * v[j] as i128).sum::<i128>() % mm == 0);
                if in_kernel && f.eval(v) % mm == 0 {
                    lattice.insert(&v.map(i128::from));
                }
            }
        }
    }
    let rows = lattice.basis()?;
    let mut cols = [[0i64; 3]; 3];
    for (k, row) in rows.iter().enumerate() {
        for i in 0..3 {
            cols[k][i] = row[i] as i64;
        }
    }
    let basis = matrix::from_columns(cols);
    let bigger = f.transform(&basis)?;
    let [a, b, c, r, s, t] = bigger.to_array();
    if [a, b, c, r, s, t].iter().any(|x| x % m != 0) {
        return Err(Error::NonIntegralWatson(m));
    }
    let form = TernaryForm::new(a / m, b / m, c / m, r / m, s / m, t / m);
    Ok(WatsonImage { form, basis, m, experimental: !(m == 4 || m == 1) })
}
