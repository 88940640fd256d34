use crate::scalar::Real;

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Golden-section search for the maximum of a unimodal `f` on `[a, b]`.
/// Returns the best point seen and its value.
pub(crate) fn golden_max<F>(f: F, a: &Real, b: &Real, iterations: usize) -> (Real, Real)
where
    F: Fn(&Real) -> Real,
{
    let p = a.prec().max(b.prec());
    let ratio = Real::from_f64(INV_PHI, p);
    let mut lo = a.clone();
    let mut hi = b.clone();
    let mut x1 = &hi - (&hi - &lo) * &ratio;
    let mut x2 = &lo + (&hi - &lo) * &ratio;
    let mut f1 = f(&x1);
    let mut f2 = f(&x2);
    for _ in 0..iterations {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = &lo + (&hi - &lo) * &ratio;
            f2 = f(&x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = &hi - (&hi - &lo) * &ratio;
            f1 = f(&x1);
        }
    }
    if f1 >= f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

/// Golden-section steps needed to shrink a bracket by `sqrt(tol) / 100`,
/// which resolves a quadratic peak to relative accuracy ~`tol`.
pub(crate) fn golden_iterations(tol: f64) -> usize {
    let shrink = (tol.sqrt() * 1e-2).max(1e-300);
    let n = (shrink.ln() / INV_PHI.ln()).ceil() as usize;
    n.clamp(20, 400)
}
