//! Small numerical helpers shared by the physics modules.

use num_complex::Complex64;

pub const I: Complex64 = Complex64::new(0.0, 1.0);
pub const ONE: Complex64 = Complex64::new(1.0, 0.0);
pub const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Below this magnitude `sinh(x a)/a` and `sin(x a)/a` switch to their series.
pub const SERIES_THRESHOLD: f64 = 1e-8;

#[inline]
pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[inline]
pub fn real(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// Square root on the branch with non-negative imaginary part.
///
/// A purely real non-negative radicand gives the non-negative real root. A
/// negative real radicand gives `+i sqrt(|z|)` regardless of the sign of a
/// zero imaginary part.
pub fn sqrt_upper(z: Complex64) -> Complex64 {
    if z.im == 0.0 {
        return if z.re >= 0.0 {
            real(z.re.sqrt())
        } else {
            c(0.0, (-z.re).sqrt())
        };
    }
    let r = z.sqrt();
    if r.im < 0.0 {
        -r
    } else {
        r
    }
}

/// `sinh(a x) / a`, continuous through `a = 0`.
pub fn sinh_over(a: f64, x: f64) -> f64 {
    if a.abs() < SERIES_THRESHOLD {
        let ax = a * x;
        x * (1.0 + ax * ax / 6.0)
    } else {
        (a * x).sinh() / a
    }
}

/// `sin(a x) / a`, continuous through `a = 0`.
pub fn sin_over(a: f64, x: f64) -> f64 {
    if a.abs() < SERIES_THRESHOLD {
        let ax = a * x;
        x * (1.0 - ax * ax / 6.0)
    } else {
        (a * x).sin() / a
    }
}

/// Evenly spaced samples including both end points; a single sample sits at `min`.
pub fn linspace(min: f64, max: f64, count: usize) -> Vec<f64> {
    match count {
        0 => Vec::new(),
        1 => vec![min],
        _ => {
            let step = (max - min) / (count - 1) as f64;
            (0..count)
                .map(|i| {
                    if i + 1 == count {
                        max
                    } else {
                        min + step * i as f64
                    }
                })
                .collect()
        }
    }
}
