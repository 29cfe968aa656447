//! Independent reference computations. Nothing here calls into the Euler-Maclaurin
//! code paths except where a test compares against them.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};

use zeta_gb::bernoulli::build_table;
use zeta_gb::zeta_core::{auto_params, zeta_gb, EvalParams};
use zeta_gb::ComplexPoint;

/// ζ(s) through the alternating eta series with Borwein's acceleration.
fn borwein_zeta(s: Complex64, n: usize) -> Complex64 {
    let nf = n as f64;
    let mut d = Vec::with_capacity(n + 1);
    let mut term = 1.0 / nf;
    let mut acc = term;
    d.push(nf * acc);
    for i in 1..=n {
        let fi = i as f64;
        term *= (nf + fi - 1.0) * 4.0 * (nf - fi + 1.0) / ((2.0 * fi) * (2.0 * fi - 1.0));
        acc += term;
        d.push(nf * acc);
    }
    let dn = d[n];
    let mut sum = Complex64::new(0.0, 0.0);
    for k in 0..n {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        let pow = (-s * ((k + 1) as f64).ln()).exp();
        sum += pow * (sign * (d[k] - dn) / dn);
    }
    let two_pow = (-(s - 1.0) * 2f64.ln()).exp(); // 2^{1-s}
    -sum / (Complex64::new(1.0, 0.0) - two_pow)
}

fn oracle_modulus(t: f64) -> f64 {
    borwein_zeta(Complex64::new(0.5, t), 100).norm()
}

fn golden_min(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> f64 {
    let g = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - g * (b - a);
    let mut d = a + g * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    while (b - a).abs() > tol {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = f(d);
        }
    }
    0.5 * (a + b)
}

fn oracle_zeros(t_min: f64, t_max: f64) -> Vec<f64> {
    let step = 0.02;
    let grid: Vec<f64> = (0..=((t_max - t_min) / step) as usize)
        .map(|k| t_min + k as f64 * step)
        .collect();
    let m: Vec<f64> = grid.iter().map(|&t| oracle_modulus(t)).collect();
    let mut zeros = Vec::new();
    for k in 1..grid.len() - 1 {
        if m[k] <= m[k - 1] && m[k] <= m[k + 1] && m[k] < 0.1 {
            let t = golden_min(oracle_modulus, grid[k - 1], grid[k + 1], 1e-11);
            if oracle_modulus(t) < 1e-8 {
                zeros.push(t);
            }
        }
    }
    zeros
}

/// Frozen from `oracle_zeros(0, 30)`; shared with the scanner tests.
const FIRST_THREE: [f64; 3] = [14.134725, 21.022040, 25.010858];

#[test]
fn borwein_reproduces_classical_values() {
    let z2 = borwein_zeta(Complex64::new(2.0, 0.0), 60);
    assert!((z2.re - std::f64::consts::PI.powi(2) / 6.0).abs() < 1e-13);
    let zh = borwein_zeta(Complex64::new(0.5, 0.0), 60);
    assert!((zh.re + 1.4603545088095868).abs() < 1e-12);
}

#[test]
fn oracle_zero_ordinates() {
    let zeros = oracle_zeros(0.5, 30.0);
    assert_eq!(zeros.len(), 3, "{zeros:?}");
    for (found, frozen) in zeros.iter().zip(FIRST_THREE) {
        assert!((found - frozen).abs() < 1e-6, "{found} vs {frozen}");
    }
}

#[test]
fn oracle_no_small_modulus_below_five() {
    let min = (0..=500).map(|k| oracle_modulus(k as f64 * 0.01)).fold(f64::INFINITY, f64::min);
    assert!(min > 0.5, "{min}");
}

#[test]
fn euler_maclaurin_agrees_with_borwein() {
    // strip and a bit beyond, |t| ≤ 30 where the oracle is reliable
    let points = [
        (0.5, 14.0),
        (0.25, 3.0),
        (0.9, 27.5),
        (0.1, -18.0),
        (1.5, 7.0),
        (-0.5, 12.0),
        (0.5, 0.3),
    ];
    for (re, im) in points {
        let s = ComplexPoint::new(re, im).unwrap();
        let params = auto_params(s, 1e-11).unwrap();
        let ours = zeta_gb(s, &params).unwrap();
        let oracle = borwein_zeta(Complex64::new(re, im), 100);
        let diff = (ours.value - oracle).norm();
        assert!(diff <= ours.remainder_bound + 1e-10, "{re}+{im}i: diff {diff}");
    }
}

/// Akiyama–Tanigawa, an unrelated route to B_n.
fn akiyama_tanigawa(n: usize) -> BigRational {
    let mut a: Vec<BigRational> = Vec::new();
    for m in 0..=n {
        a.push(BigRational::new(BigInt::one(), BigInt::from(m + 1)));
        for j in (1..=m).rev() {
            let diff = &a[j - 1] - &a[j];
            a[j - 1] = diff * BigRational::from_integer(BigInt::from(j));
        }
    }
    // this variant yields B_1 = +1/2; even indices are unaffected
    a[0].clone()
}

#[test]
fn bernoulli_twelve_from_independent_route() {
    let expected = BigRational::new(BigInt::from(-691), BigInt::from(2730));
    assert_eq!(akiyama_tanigawa(12), expected);
    let table = build_table(12).unwrap();
    assert_eq!(table.get(12), Some(&expected));
    for n in (2..=12).step_by(2) {
        assert_eq!(table.get(n).unwrap(), &akiyama_tanigawa(n));
    }
    assert!(!table.get(12).unwrap().is_zero());
}

/// Q from classical ζ values: 1/Q = (ζ(s) − N^{1-s}/(s-1)) / (s·N^{1-s}).
fn q_classical(s: f64, zeta: f64, n: f64) -> f64 {
    let lead = n.powf(1.0 - s);
    s * lead / (zeta - lead / (s - 1.0))
}

#[test]
fn q_difference_between_two_and_three() {
    let zeta3 = 1.2020569031595942;
    let zeta2 = std::f64::consts::PI.powi(2) / 6.0;
    let delta = |n: f64| q_classical(2.0, zeta2, n) - q_classical(3.0, zeta3, n);
    // frozen: N = 10 gives 0.10434…, N = 16 (auto at s = 2) gives 0.06922…
    assert!((delta(10.0) - 0.104_34).abs() < 1e-4, "{}", delta(10.0));
    assert!((delta(16.0) - 0.069_22).abs() < 1e-4, "{}", delta(16.0));
    let p = EvalParams::fixed(10, 8).unwrap();
    let ours = zeta_gb::qfunction::q_gb(ComplexPoint::new(2.0, 0.0).unwrap(), &p).unwrap().value.re
        - zeta_gb::qfunction::q_gb(ComplexPoint::new(3.0, 0.0).unwrap(), &p).unwrap().value.re;
    assert!((ours - delta(10.0)).abs() < 1e-9);
}
