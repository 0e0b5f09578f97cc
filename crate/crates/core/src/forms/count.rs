use num_integer::Integer;

use super::TernaryForm;
use crate::arith::isqrt;
use crate::error::Result;

/// Calls `visit(v, f(v))` for every integer vector with `f(v) <= bound`.
///
/// Eliminates z first, then y, then x, each time completing the square
/// so every range is an exact integer interval.
pub fn for_each_vector<F: FnMut([i64; 3], i64)>(f: &TernaryForm, bound: i64, mut visit: F) -> Result<()> {
    f.check_positive_definite()?;
    if bound < 0 {
        return Ok(());
    }
    let [a, b, c, r, s, t] = f.to_array().map(i128::from);
    let bound = bound as i128;
    let d = f.discriminant_i128();
    let big_a = 4 * a * b - t * t;
    let zmax = isqrt(bound * big_a / d);
    for z in -zmax..=zmax {
        let half_b = (2 * a * r - s * t) * z;
        let cz = (4 * a * c - s * s) * z * z;
        let disc_y = half_b * half_b - big_a * (cz - 4 * a * bound);
        if disc_y < 0 {
            continue;
        }
        let sy = isqrt(disc_y);
        let ylo = Integer::div_ceil(&(-half_b - sy), &big_a);
        let yhi = Integer::div_floor(&(-half_b + sy), &big_a);
        for y in ylo..=yhi {
            let q2 = big_a * y * y + 2 * half_b * y + cz;
            let rem = 4 * a * bound - q2;
            if rem < 0 {
                continue;
            }
            let sx = isqrt(rem);
            let lin = t * y + s * z;
            let xlo = Integer::div_ceil(&(-lin - sx), &(2 * a));
            let xhi = Integer::div_floor(&(-lin + sx), &(2 * a));
            for x in xlo..=xhi {
                let v = [x as i64, y as i64, z as i64];
                let val = f.eval(v);
                debug_assert!(val <= bound);
                visit(v, val as i64);
            }
        }
    }
    Ok(())
}

/// Number of integer solutions of `f(v) = n`.
pub fn represent_count(f: &TernaryForm, n: i64) -> Result<u64> {
    let mut count = 0u64;
    for_each_vector(f, n, |_, val| {
        if val == n {
            count += 1;
        }
    })?;
    Ok(count)
}

/// `R_f(n)` for `n = 0..=n_max`.
pub fn theta_counts(f: &TernaryForm, n_max: usize) -> Result<Vec<u64>> {
    let mut out = vec![0u64; n_max + 1];
    for_each_vector(f, n_max as i64, |_, val| out[val as usize] += 1)?;
    Ok(out)
}
