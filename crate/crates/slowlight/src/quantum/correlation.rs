//! Two-photon correlation amplitude of a pair of single-photon wave packets
//! after the cross coupling: the product of the input wave functions times
//! an interaction factor that interpolates, with the time separation,
//! between the full conditional phase and no correlation.

use num_complex::Complex64;

use crate::error::{Error, Result};

const TAU: f64 = std::f64::consts::TAU;

/// `sin(x)/x` with the removable singularity at 0.
pub fn sinc(x: f64) -> f64 {
    if x == 0.0 {
        1.0
    } else {
        x.sin() / x
    }
}

/// Interaction factor of the pair amplitude:
/// `1 + sinc(bandwidth (t1 - t2) / 2) (e^(i phi) - 1)`.
///
/// At coincidence it equals `e^(i phi)` exactly; at separations where the
/// sinc vanishes it returns 1 (uncorrelated).
pub fn correlation_factor(phi: f64, bandwidth: f64, t1: f64, t2: f64) -> Complex64 {
    let s = sinc(bandwidth * (t1 - t2) / 2.0);
    Complex64::new(1.0, 0.0) + s * (Complex64::from_polar(1.0, phi) - 1.0)
}

/// A single-photon wave packet, represented by its time-domain wave
/// function. The mode convention ties the normalization to the bandwidth:
/// `(1/bandwidth) (1/2pi) integral |psi|^2 dt = 1`.
pub struct SinglePhotonPacket {
    psi_fn: Box<dyn Fn(f64) -> Complex64 + Send + Sync>,
}

impl SinglePhotonPacket {
    /// Wrap an arbitrary wave function; the caller owns normalization.
    pub fn new(psi_fn: Box<dyn Fn(f64) -> Complex64 + Send + Sync>) -> Self {
        SinglePhotonPacket { psi_fn }
    }

    /// Gaussian packet of intensity FWHM `duration_fwhm` centered at
    /// `center`, normalized for the given bandwidth.
    pub fn gaussian(center: f64, duration_fwhm: f64, bandwidth: f64) -> Result<Self> {
        if duration_fwhm <= 0.0 || duration_fwhm.is_nan() {
            return Err(Error::invalid(
                "duration_fwhm",
                "must be > 0",
                duration_fwhm,
            ));
        }
        if bandwidth <= 0.0 || bandwidth.is_nan() {
            return Err(Error::invalid("bandwidth", "must be > 0", bandwidth));
        }
        let k = 4.0 * std::f64::consts::LN_2 / (duration_fwhm * duration_fwhm);
        let peak = TAU * bandwidth
            / (duration_fwhm * (std::f64::consts::PI / (4.0 * std::f64::consts::LN_2)).sqrt());
        let amp = peak.sqrt();
        Ok(SinglePhotonPacket {
            psi_fn: Box::new(move |t: f64| {
                let u = t - center;
                Complex64::new(amp * (-0.5 * k * u * u).exp(), 0.0)
            }),
        })
    }

    pub fn value(&self, t: f64) -> Complex64 {
        (self.psi_fn)(t)
    }

    /// Quadrature check of `(1/bandwidth) (1/2pi) integral |psi|^2 dt` over
    /// `[t_lo, t_hi]` with `n` trapezoid panels.
    pub fn norm_check(&self, bandwidth: f64, t_lo: f64, t_hi: f64, n: usize) -> f64 {
        let h = (t_hi - t_lo) / n as f64;
        let f = |t: f64| (self.psi_fn)(t).norm_sqr();
        let mut acc = 0.5 * (f(t_lo) + f(t_hi));
        for k in 1..n {
            acc += f(t_lo + k as f64 * h);
        }
        acc * h / (TAU * bandwidth)
    }
}

/// Two-time correlation amplitude sampled on a rectangular grid.
#[derive(Debug, Clone)]
pub struct CorrelationGrid {
    pub times1: Vec<f64>,
    pub times2: Vec<f64>,
    /// Row-major over (times1, times2).
    pub values: Vec<Complex64>,
    pub phi: f64,
    pub bandwidth: f64,
}

impl CorrelationGrid {
    pub fn value(&self, i: usize, j: usize) -> Complex64 {
        self.values[i * self.times2.len() + j]
    }

    /// Trapezoid estimate of
    /// `(1/bandwidth^2) (1/2pi)^2 double-integral |values|^2`; equals 1 at
    /// `phi = 0` for normalized packets and is reported as a diagnostic
    /// otherwise (the interaction reshapes the mode structure).
    pub fn norm_diagnostic(&self) -> f64 {
        let weight = |k: usize, len: usize| if k == 0 || k + 1 == len { 0.5 } else { 1.0 };
        if self.times1.len() < 2 || self.times2.len() < 2 {
            return f64::NAN;
        }
        let h1 = self.times1[1] - self.times1[0];
        let h2 = self.times2[1] - self.times2[0];
        let mut acc = 0.0;
        for i in 0..self.times1.len() {
            for j in 0..self.times2.len() {
                acc += weight(i, self.times1.len())
                    * weight(j, self.times2.len())
                    * self.value(i, j).norm_sqr();
            }
        }
        acc * h1 * h2 / (TAU * TAU * self.bandwidth * self.bandwidth)
    }
}

/// Fill the correlation grid
/// `psi1(t1) psi2(t2) [1 + sinc(bandwidth (t1 - t2)/2)(e^(i phi) - 1)]`.
///
/// Times are in the retarded frame at the cell exit; propagation delays
/// before and after the cell enter as exact shifts of the time arguments,
/// applied by the caller.
pub fn photon_pair_correlation(
    p1: &SinglePhotonPacket,
    p2: &SinglePhotonPacket,
    phi: f64,
    bandwidth: f64,
    times1: &[f64],
    times2: &[f64],
) -> CorrelationGrid {
    let mut values = Vec::with_capacity(times1.len() * times2.len());
    for &t1 in times1 {
        let v1 = p1.value(t1);
        for &t2 in times2 {
            values.push(v1 * p2.value(t2) * correlation_factor(phi, bandwidth, t1, t2));
        }
    }
    CorrelationGrid {
        times1: times1.to_vec(),
        times2: times2.to_vec(),
        values,
        phi,
        bandwidth,
    }
}
