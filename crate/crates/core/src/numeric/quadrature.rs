//! Adaptive Gauss–Kronrod (7-15) quadrature.

use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

const MAX_SEGMENTS: usize = 4000;

/// Value with its estimated absolute error.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Integral<T> {
    pub value: T,
    pub error: f64,
}

trait Field: Copy + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self> {
    fn zero() -> Self;
    fn abs(self) -> f64;
}

impl Field for f64 {
    fn zero() -> Self {
        0.0
    }
    fn abs(self) -> f64 {
        f64::abs(self)
    }
}

impl Field for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn abs(self) -> f64 {
        self.norm()
    }
}

struct Segment<T> {
    a: f64,
    b: f64,
    value: T,
    error: f64,
}

fn kronrod<T: Field>(f: &mut impl FnMut(f64) -> T, a: f64, b: f64) -> Segment<T> {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut gauss = fc * WG[3];
    let mut kron = fc * WGK[7];
    for (j, (&x, &w)) in XGK.iter().zip(&WGK).take(7).enumerate() {
        let pair = f(c - h * x) + f(c + h * x);
        kron = kron + pair * w;
        if j % 2 == 1 {
            gauss = gauss + pair * WG[j / 2];
        }
    }
    let value = kron * h;
    let error = ((kron - gauss) * h).abs();
    Segment { a, b, value, error }
}

fn adaptive<T: Field>(mut f: impl FnMut(f64) -> T, a: f64, b: f64, tol: f64) -> Result<Integral<T>> {
    let mut segments = vec![kronrod(&mut f, a, b)];
    loop {
        let error: f64 = segments.iter().map(|s| s.error).sum();
        if error <= tol {
            break;
        }
        if segments.len() >= MAX_SEGMENTS {
            return Err(Error::Quadrature { estimate: error });
        }
        let (worst, _) = segments
            .iter()
            .enumerate()
            .max_by(|x, y| x.1.error.total_cmp(&y.1.error))
            .expect("at least one segment");
        let s = segments.swap_remove(worst);
        let mid = 0.5 * (s.a + s.b);
        if mid <= s.a || mid >= s.b {
            // Cannot split further in double precision.
            return Err(Error::Quadrature { estimate: error });
        }
        segments.push(kronrod(&mut f, s.a, mid));
        segments.push(kronrod(&mut f, mid, s.b));
    }
    segments.sort_by(|x, y| x.a.total_cmp(&y.a));
    let value = segments.iter().fold(T::zero(), |acc, s| acc + s.value);
    let error = segments.iter().map(|s| s.error).sum();
    Ok(Integral { value, error })
}

/// `∫_a^b f` to absolute accuracy `tol`.
pub fn integrate(f: impl FnMut(f64) -> f64, a: f64, b: f64, tol: f64) -> Result<Integral<f64>> {
    adaptive(f, a, b, tol)
}

/// Complex-valued version of [`integrate`].
pub fn integrate_complex(
    f: impl FnMut(f64) -> Complex64,
    a: f64,
    b: f64,
    tol: f64,
) -> Result<Integral<Complex64>> {
    adaptive(f, a, b, tol)
}
