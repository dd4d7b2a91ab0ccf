//! Gamma function from the Taylor series of `1/Γ(1+x)` about zero.
//!
//! The series is entire, converges quickly for `|x| ≤ 1/2`, and yields the
//! `Γ(1±μ)` combinations that Temme's `K_ν` series needs without cancellation.

#[allow(clippy::excessive_precision, clippy::unreadable_literal)]
const RGAMMA_SERIES: [f64; 31] = [
    1.0,
    0.57721566490153286061,
    -0.65587807152025388108,
    -0.042002635034095235529,
    0.1665386113822914895,
    -0.042197734555544336748,
    -0.0096219715278769735621,
    0.0072189432466630995424,
    -0.0011651675918590651121,
    -0.00021524167411495097282,
    0.00012805028238811618615,
    -0.000020134854780788238656,
    -1.2504934821426706573e-6,
    1.1330272319816958824e-6,
    -2.0563384169776071035e-7,
    6.1160951044814158179e-9,
    5.0020076444692229301e-9,
    -1.1812745704870201446e-9,
    1.0434267116911005105e-10,
    7.782263439905071254e-12,
    -3.6968056186422057082e-12,
    5.100370287454475979e-13,
    -2.0583260535665067832e-14,
    -5.3481225394230179824e-15,
    1.2267786282382607902e-15,
    -1.1812593016974587695e-16,
    1.1866922547516003326e-18,
    1.4123806553180317816e-18,
    -2.2987456844353702066e-19,
    1.7144063219273374334e-20,
    1.3373517304936931149e-22,
];

/// `1/Γ(1+x)`, accurate for `|x| ≤ 1/2`.
pub(crate) fn rgamma1p(x: f64) -> f64 {
    RGAMMA_SERIES.iter().rev().fold(0.0, |acc, &c| acc * x + c)
}

/// Even and odd parts of `1/Γ(1+x)` as needed by Temme's method:
/// `gam1 = (1/Γ(1-μ) - 1/Γ(1+μ)) / (2μ)`, `gam2 = (1/Γ(1-μ) + 1/Γ(1+μ)) / 2`.
pub(crate) fn temme_gammas(mu: f64) -> (f64, f64) {
    let mu2 = mu * mu;
    let mut gam1 = 0.0;
    let mut gam2 = 0.0;
    for (j, &c) in RGAMMA_SERIES.iter().enumerate().rev() {
        if j % 2 == 1 {
            gam1 = gam1 * mu2 + c;
        } else {
            gam2 = gam2 * mu2 + c;
        }
    }
    (-gam1, gam2)
}

/// `Γ(x)` for real `x` with `|x| < 40`, excluding the poles.
pub fn gamma(x: f64) -> f64 {
    if x <= 0.0 && x == x.floor() {
        return f64::NAN;
    }
    let mut shift = x - 1.0;
    let mut factor = 1.0;
    while shift > 0.5 {
        shift -= 1.0;
        factor *= shift + 1.0;
    }
    while shift < -0.5 {
        factor /= shift + 1.0;
        shift += 1.0;
    }
    factor / rgamma1p(shift)
}
