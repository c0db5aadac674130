//! Polynomial roots as eigenvalues of a balanced companion matrix.

use ndarray::Array2;

use crate::error::{Error, Result};
use crate::scalar::{Complex64, Scalar};

const MAX_ITERS_PER_ROOT: usize = 60;

/// All roots (with multiplicity) of the monic polynomial whose coefficients
/// are listed from the constant term up; the last entry must be 1.
pub fn companion_roots<S: Scalar>(monic_coeffs: &[S]) -> Result<Vec<Complex64>> {
    if monic_coeffs.len() < 2 {
        return Err(Error::InvalidDegree);
    }
    let lead = monic_coeffs.last().expect("len checked");
    let is_monic = if S::EXACT {
        *lead == S::one()
    } else {
        (lead.to_c64() - 1.0).norm() < 1e-12
    };
    if !is_monic {
        return Err(Error::InvalidInput(format!(
            "leading coefficient {:?} is not 1",
            lead
        )));
    }
    let coeffs: Vec<Complex64> = monic_coeffs.iter().map(|c| c.to_c64()).collect();
    let n = coeffs.len() - 1;

    // Zero roots split off exactly.
    let zeros = coeffs.iter().take_while(|c| c.norm() == 0.0).count();
    let mut roots = vec![Complex64::new(0.0, 0.0); zeros];
    let reduced = &coeffs[zeros..];
    let m = n - zeros;
    if m == 0 {
        return Ok(roots);
    }
    if m == 1 {
        roots.push(-reduced[0]);
        return Ok(roots);
    }
    let mut h = Array2::from_elem((m, m), Complex64::new(0.0, 0.0));
    for j in 0..m {
        h[[0, j]] = -reduced[m - 1 - j];
    }
    for i in 1..m {
        h[[i, i - 1]] = Complex64::new(1.0, 0.0);
    }
    balance(&mut h);
    roots.extend(hessenberg_qr_eigenvalues(h)?);
    Ok(roots)
}

/// Parlett–Reinsch balancing with radix 2 (row/column norm equalization).
/// A diagonal similarity, so Hessenberg structure and spectrum are preserved.
pub fn balance(a: &mut Array2<Complex64>) {
    let n = a.nrows();
    let radix = 2.0f64;
    let sqrdx = radix * radix;
    let mut done = false;
    while !done {
        done = true;
        for i in 0..n {
            let mut c = 0.0;
            let mut r = 0.0;
            for j in 0..n {
                if j != i {
                    c += a[[j, i]].norm();
                    r += a[[i, j]].norm();
                }
            }
            if c == 0.0 || r == 0.0 {
                continue;
            }
            let s = c + r;
            let mut f = 1.0;
            let mut g = r / radix;
            while c < g {
                f *= radix;
                c *= sqrdx;
            }
            g = r * radix;
            while c > g {
                f /= radix;
                c /= sqrdx;
            }
            if (c + r) / f < 0.95 * s {
                done = false;
                let ginv = 1.0 / f;
                for j in 0..n {
                    a[[i, j]] *= ginv;
                }
                for j in 0..n {
                    a[[j, i]] *= f;
                }
            }
        }
    }
}

/// Eigenvalues of an upper Hessenberg matrix by single-shift complex QR with
/// Wilkinson shifts and Givens rotations.
pub fn hessenberg_qr_eigenvalues(mut h: Array2<Complex64>) -> Result<Vec<Complex64>> {
    let n = h.nrows();
    let eps = f64::EPSILON;
    let mut eigs = Vec::with_capacity(n);
    let mut hi = n as isize - 1;
    let mut iter = 0usize;
    let mut total = 0usize;
    let cap = MAX_ITERS_PER_ROOT * n.max(1);
    while hi >= 0 {
        let hi_u = hi as usize;
        // Find the start of the active unreduced block.
        let mut lo = hi_u;
        while lo > 0 {
            let sub = h[[lo, lo - 1]].norm();
            let diag = h[[lo - 1, lo - 1]].norm() + h[[lo, lo]].norm();
            if sub <= eps * diag || sub < f64::MIN_POSITIVE {
                h[[lo, lo - 1]] = Complex64::new(0.0, 0.0);
                break;
            }
            lo -= 1;
        }
        if lo == hi_u {
            eigs.push(h[[hi_u, hi_u]]);
            hi -= 1;
            iter = 0;
            continue;
        }
        if total >= cap {
            return Err(Error::NoConvergence(cap));
        }
        iter += 1;
        total += 1;

        let shift = if iter.is_multiple_of(11) {
            // Exceptional shift to break cycles.
            h[[hi_u, hi_u]] + Complex64::new(h[[hi_u, hi_u - 1]].norm(), 0.0) * 0.75
        } else {
            wilkinson_shift(
                h[[hi_u - 1, hi_u - 1]],
                h[[hi_u - 1, hi_u]],
                h[[hi_u, hi_u - 1]],
                h[[hi_u, hi_u]],
            )
        };
        qr_step(&mut h, lo, hi_u, shift);
    }
    Ok(eigs)
}

fn wilkinson_shift(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Complex64 {
    let half_tr = (a + d) * 0.5;
    let disc = ((a - d) * 0.5).powi(2) + b * c;
    let root = disc.sqrt();
    let l1 = half_tr + root;
    let l2 = half_tr - root;
    if (l1 - d).norm() < (l2 - d).norm() {
        l1
    } else {
        l2
    }
}

fn qr_step(h: &mut Array2<Complex64>, lo: usize, hi: usize, shift: Complex64) {
    for k in lo..=hi {
        h[[k, k]] -= shift;
    }
    let mut rots = Vec::with_capacity(hi - lo);
    for k in lo..hi {
        let x = h[[k, k]];
        let y = h[[k + 1, k]];
        let (c, s) = givens(x, y);
        for j in k..=hi {
            let u = h[[k, j]];
            let v = h[[k + 1, j]];
            h[[k, j]] = u * c + s * v;
            h[[k + 1, j]] = -s.conj() * u + v * c;
        }
        h[[k + 1, k]] = Complex64::new(0.0, 0.0);
        rots.push((c, s));
    }
    for (idx, (c, s)) in rots.into_iter().enumerate() {
        let k = lo + idx;
        let top = (k + 2).min(hi);
        for i in lo..=top {
            let u = h[[i, k]];
            let v = h[[i, k + 1]];
            h[[i, k]] = u * c + v * s.conj();
            h[[i, k + 1]] = -u * s + v * c;
        }
    }
    for k in lo..=hi {
        h[[k, k]] += shift;
    }
}

/// Rotation [[c, s], [-conj(s), c]] (c real) mapping (x, y) to (r, 0).
fn givens(x: Complex64, y: Complex64) -> (f64, Complex64) {
    let ax = x.norm();
    let ay = y.norm();
    if ay == 0.0 {
        return (1.0, Complex64::new(0.0, 0.0));
    }
    if ax == 0.0 {
        return (0.0, Complex64::new(1.0, 0.0));
    }
    let r = ax.hypot(ay);
    let c = ax / r;
    let s = (x / ax) * y.conj() / r;
    (c, s)
}

/// Horner evaluation of p and p'.
pub fn eval_with_derivative(coeffs: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

/// One Newton step; the step is rejected if it does not reduce |p|.
pub fn newton_polish(coeffs: &[Complex64], z: Complex64) -> Complex64 {
    let (p, dp) = eval_with_derivative(coeffs, z);
    if dp.norm() == 0.0 || p.norm() == 0.0 {
        return z;
    }
    let candidate = z - p / dp;
    let (pc, _) = eval_with_derivative(coeffs, candidate);
    if candidate.re.is_finite() && candidate.im.is_finite() && pc.norm() <= p.norm() {
        candidate
    } else {
        z
    }
}
