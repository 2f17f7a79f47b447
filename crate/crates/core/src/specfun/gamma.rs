//! Gamma, reciprocal Gamma and digamma for complex arguments.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::SpecfunError;

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];
const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;
const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// True when `z` is `0, −1, −2, …`.
pub fn is_nonpositive_integer(z: Complex64) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re.fract() == 0.0
}

/// Lanczos form of `ln Γ(z)` for `Re z ≥ 1/2`.
fn ln_gamma_right(z: Complex64) -> Complex64 {
    let z = z - 1.0;
    let mut acc = Complex64::new(LANCZOS[0], 0.0);
    for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
        acc += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    LN_SQRT_2PI + (z + 0.5) * t.ln() - t + acc.ln()
}

/// A logarithm of `Γ(z)`. The imaginary part is not reduced to the principal
/// branch; `exp` of the result is `Γ(z)`.
pub fn ln_gamma(z: Complex64) -> Result<Complex64, SpecfunError> {
    if is_nonpositive_integer(z) {
        return Err(SpecfunError::PoleError(z));
    }
    if z.re >= 0.5 {
        return Ok(ln_gamma_right(z));
    }
    let s = (PI * z).sin();
    Ok(Complex64::new(PI.ln(), 0.0) - s.ln() - ln_gamma_right(1.0 - z))
}

/// `Γ(z)` for complex `z` off the poles.
pub fn complex_gamma(z: Complex64) -> Result<Complex64, SpecfunError> {
    if is_nonpositive_integer(z) {
        return Err(SpecfunError::PoleError(z));
    }
    if z.im == 0.0 && z.re > 0.0 && z.re <= 171.0 && z.re.fract() == 0.0 {
        let n = z.re as u32;
        let f = (1..n).fold(1.0, |acc, k| acc * k as f64);
        return Ok(Complex64::new(f, 0.0));
    }
    if z.re >= 0.5 {
        return Ok(ln_gamma_right(z).exp());
    }
    Ok(PI / ((PI * z).sin() * ln_gamma_right(1.0 - z).exp()))
}

/// `1/Γ(z)`, an entire function: zero at the poles of `Γ`.
pub fn recip_gamma(z: Complex64) -> Complex64 {
    if is_nonpositive_integer(z) {
        return Complex64::new(0.0, 0.0);
    }
    if z.re >= 0.5 {
        return (-ln_gamma_right(z)).exp();
    }
    (PI * z).sin() * ln_gamma_right(1.0 - z).exp() / PI
}

/// Digamma `ψ(z) = Γ'(z)/Γ(z)`.
pub fn digamma(z: Complex64) -> Result<Complex64, SpecfunError> {
    if is_nonpositive_integer(z) {
        return Err(SpecfunError::PoleError(z));
    }
    if z.re < 0.5 {
        let cot = (PI * z).cos() / (PI * z).sin();
        return Ok(digamma(1.0 - z)? - PI * cot);
    }
    let mut z = z;
    let mut acc = Complex64::new(0.0, 0.0);
    while z.norm() < 12.0 {
        acc -= z.inv();
        z += 1.0;
    }
    let r = z.inv();
    let r2 = r * r;
    // Bernoulli tail B_{2k}/(2k z^{2k}), k = 1..7.
    let tail = r2
        * (1.0 / 12.0
            - r2 * (1.0 / 120.0
                - r2 * (1.0 / 252.0 - r2 * (1.0 / 240.0 - r2 * (1.0 / 132.0 - r2 * (691.0 / 32_760.0 - r2 / 12.0))))));
    Ok(acc + z.ln() - 0.5 * r - tail)
}

/// `ψ(n + 1) = −γ + H_n` for integer `n ≥ 0`.
pub(crate) fn digamma_int(n: usize) -> f64 {
    -EULER_GAMMA + (1..=n).map(|k| 1.0 / k as f64).sum::<f64>()
}

/// Rising factorial `(a)_n = a (a+1) ⋯ (a+n−1)`.
pub fn pochhammer(a: Complex64, n: usize) -> Complex64 {
    (0..n).fold(Complex64::new(1.0, 0.0), |acc, k| acc * (a + k as f64))
}
