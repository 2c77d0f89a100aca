//! Adaptive Simpson quadrature, used by the theorem verifiers and as an
//! independent oracle against the closed-form antiderivatives.

pub fn adaptive_simpson<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, tol: f64) -> f64 {
    if lo == hi {
        return 0.0;
    }
    let fl = f(lo);
    let fh = f(hi);
    let mid = 0.5 * (lo + hi);
    let fm = f(mid);
    let whole = simpson(lo, hi, fl, fm, fh);
    recurse(&f, lo, hi, fl, fm, fh, whole, tol, 50)
}

fn simpson(lo: f64, hi: f64, fl: f64, fm: f64, fh: f64) -> f64 {
    (hi - lo) / 6.0 * (fl + 4.0 * fm + fh)
}

#[allow(clippy::too_many_arguments)]
fn recurse<F: Fn(f64) -> f64>(
    f: &F,
    lo: f64,
    hi: f64,
    fl: f64,
    fm: f64,
    fh: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> f64 {
    let mid = 0.5 * (lo + hi);
    let lm = 0.5 * (lo + mid);
    let rm = 0.5 * (mid + hi);
    let flm = f(lm);
    let frm = f(rm);
    let left = simpson(lo, mid, fl, flm, fm);
    let right = simpson(mid, hi, fm, frm, fh);
    let err = left + right - whole;
    if depth == 0 || err.abs() <= 15.0 * tol {
        left + right + err / 15.0
    } else {
        recurse(f, lo, mid, fl, flm, fm, left, 0.5 * tol, depth - 1)
            + recurse(f, mid, hi, fm, frm, fh, right, 0.5 * tol, depth - 1)
    }
}
