//! Moments, confidence intervals, correlation and the KS distance to Φ.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Two-sided 95% normal quantile.
pub const Z95: f64 = 1.959_963_984_540_054;

/// `Φ(x)` as `erfc(−x/√2)/2`, with `erfc` from the `libm` crate (a port of
/// the FreeBSD msun rational approximations, accurate to about one ulp).
/// Using `erfc` rather than `1 + erf` keeps full relative accuracy in the
/// lower tail.
pub fn normal_cdf(x: f64) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    0.5 * libm::erfc(-x / std::f64::consts::SQRT_2)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn around(x: f64, half: f64) -> Self {
        Interval { lo: x - half, hi: x + half }
    }

    pub fn half_width(&self) -> f64 {
        0.5 * (self.hi - self.lo)
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }
}

/// Sample moments with normal-approximation confidence intervals; the
/// variance interval uses the fourth-moment (delta-method) standard error.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MomentSummary {
    pub count: usize,
    pub mean: f64,
    /// Unbiased.
    pub variance: f64,
    /// `E|X − mean|³` (plug-in).
    pub third_abs_central: f64,
    pub fourth_central: f64,
    pub se_mean: f64,
    pub se_variance: f64,
    pub ci_mean: Interval,
    pub ci_variance: Interval,
}

impl MomentSummary {
    pub fn from_samples(xs: &[f64]) -> Result<Self> {
        let n = xs.len();
        if n < 2 {
            return Err(Error::param("samples", "need at least two values"));
        }
        let nf = n as f64;
        let mean = xs.iter().sum::<f64>() / nf;
        let (mut m2, mut m3a, mut m4) = (0.0, 0.0, 0.0);
        for &x in xs {
            let d = x - mean;
            let d2 = d * d;
            m2 += d2;
            m3a += d2 * d.abs();
            m4 += d2 * d2;
        }
        Ok(Self::assemble(n, mean, m2, m3a / nf, m4 / nf))
    }

    /// Single pass (Welford/Terriberry updates). The third absolute moment
    /// cannot be accumulated in one pass and is reported as NaN.
    pub fn streaming(xs: &[f64]) -> Result<Self> {
        if xs.len() < 2 {
            return Err(Error::param("samples", "need at least two values"));
        }
        let (mut n, mut mean, mut m2, mut m3, mut m4) = (0.0f64, 0.0, 0.0, 0.0, 0.0);
        for &x in xs {
            let n1 = n;
            n += 1.0;
            let delta = x - mean;
            let dn = delta / n;
            let dn2 = dn * dn;
            let t = delta * dn * n1;
            mean += dn;
            m4 += t * dn2 * (n * n - 3.0 * n + 3.0) + 6.0 * dn2 * m2 - 4.0 * dn * m3;
            m3 += t * dn * (n - 2.0) - 3.0 * dn * m2;
            m2 += t;
        }
        Ok(Self::assemble(xs.len(), mean, m2, f64::NAN, m4 / n))
    }

    fn assemble(count: usize, mean: f64, m2: f64, third_abs_central: f64, fourth_central: f64) -> Self {
        let nf = count as f64;
        let variance = (m2 / (nf - 1.0)).max(0.0);
        let se_mean = (variance / nf).sqrt();
        let v_plug = m2 / nf;
        let se_variance = ((fourth_central - v_plug * v_plug).max(0.0) / nf).sqrt();
        MomentSummary {
            count,
            mean,
            variance,
            third_abs_central,
            fourth_central,
            se_mean,
            se_variance,
            ci_mean: Interval::around(mean, Z95 * se_mean),
            ci_variance: Interval::around(variance, Z95 * se_variance),
        }
    }

    pub fn sd(&self) -> f64 {
        self.variance.sqrt()
    }
}

/// Ratio `a/b` of two independent estimates with a delta-method interval.
pub fn ratio_interval(a: f64, se_a: f64, b: f64, se_b: f64) -> (f64, Interval) {
    let r = a / b;
    let se = r.abs() * ((se_a / a).powi(2) + (se_b / b).powi(2)).sqrt();
    (r, Interval::around(r, Z95 * se))
}

/// Pearson correlation with a Fisher-z 95% interval.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Correlation {
    pub r: f64,
    pub ci: Interval,
}

pub fn correlation(x: &[f64], y: &[f64]) -> Result<Correlation> {
    let n = x.len();
    if n != y.len() || n < 4 {
        return Err(Error::param("samples", "need at least four paired values"));
    }
    let nf = n as f64;
    let mx = x.iter().sum::<f64>() / nf;
    let my = y.iter().sum::<f64>() / nf;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (a, b) in x.iter().zip(y) {
        let (dx, dy) = (a - mx, b - my);
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if sxx == 0.0 || syy == 0.0 {
        return Err(Error::ZeroVariance);
    }
    let r = (sxy / (sxx * syy).sqrt()).clamp(-1.0, 1.0);
    let z = r.clamp(-1.0 + 1e-15, 1.0 - 1e-15).atanh();
    let half = Z95 / (nf - 3.0).sqrt();
    Ok(Correlation { r, ci: Interval { lo: (z - half).tanh(), hi: (z + half).tanh() } })
}

/// Kolmogorov–Smirnov distance of standardised samples to Φ.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct KsResult {
    pub d: f64,
    pub m: usize,
    /// The standardisation used: sample mean and sample standard deviation.
    pub mean: f64,
    pub sd: f64,
}

/// Lilliefors variant: standardise by the sample mean and unbiased sample
/// standard deviation, then
/// `D = max_i max(|i/M − Φ(x_(i))|, |Φ(x_(i)) − (i−1)/M|)`.
pub fn ks_statistic(samples: &[f64]) -> Result<KsResult> {
    let m = samples.len();
    if m < 2 {
        return Err(Error::param("samples", "need at least two values"));
    }
    let s = MomentSummary::from_samples(samples)?;
    if !(s.variance > 0.0) {
        return Err(Error::ZeroVariance);
    }
    let sd = s.sd();
    let mut z: Vec<f64> = samples.iter().map(|&x| (x - s.mean) / sd).collect();
    z.sort_by(f64::total_cmp);
    let d = ks_sorted(&z, normal_cdf);
    Ok(KsResult { d, m, mean: s.mean, sd })
}

/// `sup |F_emp − F|` for sorted samples and a continuous CDF.
pub fn ks_sorted<F: Fn(f64) -> f64>(sorted: &[f64], cdf: F) -> f64 {
    let mf = sorted.len() as f64;
    let mut d: f64 = 0.0;
    for (k, &x) in sorted.iter().enumerate() {
        let f = cdf(x);
        let i = (k + 1) as f64;
        d = d.max((i / mf - f).abs()).max((f - (i - 1.0) / mf).abs());
    }
    d
}

/// Two-sample KS distance.
pub fn ks_two_sample(a: &[f64], b: &[f64]) -> f64 {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    x.sort_by(f64::total_cmp);
    y.sort_by(f64::total_cmp);
    let (mut i, mut j) = (0, 0);
    let (na, nb) = (x.len() as f64, y.len() as f64);
    let mut d: f64 = 0.0;
    while i < x.len() && j < y.len() {
        let t = x[i].min(y[j]);
        while i < x.len() && x[i] <= t {
            i += 1;
        }
        while j < y.len() && y[j] <= t {
            j += 1;
        }
        d = d.max((i as f64 / na - j as f64 / nb).abs());
    }
    d
}

/// Asymptotic 5% critical value of the two-sample KS distance.
pub fn ks_two_sample_critical(na: usize, nb: usize) -> f64 {
    1.358 * ((na + nb) as f64 / (na as f64 * nb as f64)).sqrt()
}

/// Ordinary least squares `y ≈ a + b x`; returns `(a, b)`.
pub fn linear_fit(x: &[f64], y: &[f64]) -> (f64, f64) {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = x.iter().map(|a| (a - mx) * (a - mx)).sum();
    let b = sxy / sxx;
    (my - b * mx, b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use rand_distr::{Distribution, StandardNormal};

    #[test]
    fn cdf_values() {
        assert_eq!(normal_cdf(0.0), 0.5);
        assert!((normal_cdf(1.0) - 0.841_344_746_068_542_9).abs() < 1e-12);
        assert!((normal_cdf(-1.96) - 0.024_997_895_148_220_435).abs() < 1e-12);
        assert_eq!(normal_cdf(40.0), 1.0);
        assert_eq!(normal_cdf(-40.0), 0.0);
    }

    #[test]
    fn two_point_sample() {
        let xs: Vec<f64> = (0..1000).map(|i| if i % 2 == 0 { 1.0 } else { -1.0 }).collect();
        let ks = ks_statistic(&xs).unwrap();
        // the sample sd is √(M/(M−1)), so the atoms sit at ±√((M−1)/M)
        let z = (999.0f64 / 1000.0).sqrt();
        assert!((ks.d - (normal_cdf(z) - 0.5)).abs() < 1e-12, "{}", ks.d);
        assert!((ks.d - 0.3413).abs() < 1e-3);
    }

    #[test]
    fn constant_sample_is_rejected() {
        assert_eq!(ks_statistic(&[2.0; 10]).unwrap_err(), Error::ZeroVariance);
        assert!(ks_statistic(&[1.0]).is_err());
    }

    #[test]
    fn streaming_agrees_with_two_pass() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let xs: Vec<f64> = (0..10_000).map(|_| { let z: f64 = StandardNormal.sample(&mut rng); 1e3 + 7.0 * z }).collect();
        let a = MomentSummary::from_samples(&xs).unwrap();
        let b = MomentSummary::streaming(&xs).unwrap();
        for (u, v) in [(a.mean, b.mean), (a.variance, b.variance), (a.se_variance, b.se_variance)] {
            assert!(((u - v) / u).abs() < 1e-12, "{u} vs {v}");
        }
        assert!(a.ci_mean.contains(a.mean) && a.ci_variance.contains(a.variance));
    }

    #[test]
    fn correlation_of_linear_data() {
        let x: Vec<f64> = (0..100).map(|i| i as f64).collect();
        let y: Vec<f64> = x.iter().map(|v| 3.0 - 2.0 * v).collect();
        assert!((correlation(&x, &y).unwrap().r + 1.0).abs() < 1e-12);
        assert!((correlation(&x, &x).unwrap().r - 1.0).abs() < 1e-12);
    }

    #[test]
    fn fit_recovers_line() {
        let x = [1.0, 2.0, 3.0, 4.0];
        let y: Vec<f64> = x.iter().map(|v| 0.5 + 2.0 * v).collect();
        let (a, b) = linear_fit(&x, &y);
        assert!((a - 0.5).abs() < 1e-12 && (b - 2.0).abs() < 1e-12);
    }

    #[test]
    fn two_sample_identical() {
        let a = [1.0, 2.0, 3.0];
        assert_eq!(ks_two_sample(&a, &a), 0.0);
        assert_eq!(ks_two_sample(&[0.0, 1.0], &[5.0, 6.0]), 1.0);
    }
}
