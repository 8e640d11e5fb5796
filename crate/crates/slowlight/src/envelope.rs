//! Complex field envelopes on a uniform retarded-time grid.
//!
//! The photon-number convention is `n = (1/2pi) * integral |alpha(t)|^2 dt`;
//! the stored `bandwidth` is the commutator normalization the envelope is
//! quantized against. The grid is periodic: `t_max` is one grid spacing past
//! the last sample.

use std::io::{BufRead, Read, Write};

use num_complex::Complex64;
use rustfft::FftPlanner;

use crate::error::{Error, Result};

const TAU: f64 = std::f64::consts::TAU;

/// Uniform time grid with a power-of-two point count.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeGrid {
    n_points: usize,
    t_min: f64,
    t_max: f64,
    dt: f64,
}

impl TimeGrid {
    pub fn new(n_points: usize, t_min: f64, t_max: f64) -> Result<Self> {
        if n_points < 8 || !n_points.is_power_of_two() {
            return Err(Error::invalid(
                "n_points",
                "must be a power of two >= 8",
                n_points as f64,
            ));
        }
        if t_max <= t_min || !t_min.is_finite() || !t_max.is_finite() {
            return Err(Error::invalid("t_max", "must exceed t_min", t_max));
        }
        let dt = (t_max - t_min) / n_points as f64;
        Ok(TimeGrid {
            n_points,
            t_min,
            t_max,
            dt,
        })
    }

    pub fn n_points(&self) -> usize {
        self.n_points
    }

    pub fn t_min(&self) -> f64 {
        self.t_min
    }

    pub fn t_max(&self) -> f64 {
        self.t_max
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn time(&self, index: usize) -> f64 {
        self.t_min + index as f64 * self.dt
    }

    pub fn times(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.n_points).map(|k| self.time(k))
    }

    /// Angular frequency of FFT bin `index`, in standard FFT ordering
    /// (non-negative frequencies first, then negative). Spans +-pi/dt.
    pub fn omega(&self, index: usize) -> f64 {
        let n = self.n_points as isize;
        let k = index as isize;
        let signed = if k < n / 2 { k } else { k - n };
        TAU * signed as f64 / (self.n_points as f64 * self.dt)
    }
}

/// A sampled complex envelope with its commutator bandwidth.
#[derive(Debug, Clone, PartialEq)]
pub struct Envelope {
    pub grid: TimeGrid,
    pub samples: Vec<Complex64>,
    /// Detection/quantization bandwidth the envelope is referred to.
    pub bandwidth: f64,
}

impl Envelope {
    pub fn new(grid: TimeGrid, samples: Vec<Complex64>, bandwidth: f64) -> Result<Self> {
        if samples.len() != grid.n_points() {
            return Err(Error::GridMismatch);
        }
        Ok(Envelope {
            grid,
            samples,
            bandwidth,
        })
    }

    pub fn zero(grid: TimeGrid, bandwidth: f64) -> Self {
        Envelope {
            grid,
            samples: vec![Complex64::new(0.0, 0.0); grid.n_points()],
            bandwidth,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.samples
            .iter()
            .all(|s| s.re.is_finite() && s.im.is_finite())
    }

    /// `(1/2pi) * integral |alpha|^2 dt` by trapezoid rule.
    pub fn photon_number(&self) -> f64 {
        trapezoid(&self.samples, self.grid.dt(), |s| s.norm_sqr()) / TAU
    }

    /// Discrete spectrum in FFT ordering (no normalization applied).
    pub fn spectrum(&self) -> Vec<Complex64> {
        let mut buf = self.samples.clone();
        FftPlanner::new()
            .plan_fft_forward(buf.len())
            .process(&mut buf);
        buf
    }

    /// Fraction of spectral power lying outside +-bandwidth/2.
    ///
    /// The quantum-state interpretation assumes the envelope fits inside the
    /// quantized band; callers warn on violation rather than failing.
    pub fn out_of_band_fraction(&self) -> f64 {
        let spec = self.spectrum();
        let mut total = 0.0;
        let mut outside = 0.0;
        for (k, s) in spec.iter().enumerate() {
            let p = s.norm_sqr();
            total += p;
            if self.grid.omega(k).abs() > self.bandwidth / 2.0 {
                outside += p;
            }
        }
        if total == 0.0 {
            0.0
        } else {
            outside / total
        }
    }
}

fn trapezoid<T>(samples: &[T], dt: f64, f: impl Fn(&T) -> f64) -> f64 {
    if samples.is_empty() {
        return 0.0;
    }
    let mut acc = 0.5 * (f(&samples[0]) + f(&samples[samples.len() - 1]));
    for s in &samples[1..samples.len() - 1] {
        acc += f(s);
    }
    acc * dt
}

/// Build a Gaussian pulse with intensity FWHM `duration_fwhm`, centered at
/// `center`, normalized so the photon number equals `photon_number`.
pub fn make_gaussian_pulse(
    grid: TimeGrid,
    photon_number: f64,
    duration_fwhm: f64,
    center: f64,
    bandwidth: f64,
) -> Result<Envelope> {
    if photon_number < 0.0 || !photon_number.is_finite() {
        return Err(Error::invalid(
            "photon_number",
            "must be >= 0",
            photon_number,
        ));
    }
    if photon_number == 0.0 {
        return Ok(Envelope::zero(grid, bandwidth));
    }
    if duration_fwhm <= 0.0 || duration_fwhm.is_nan() {
        return Err(Error::invalid(
            "duration_fwhm",
            "must be > 0",
            duration_fwhm,
        ));
    }
    let limit = duration_fwhm / 8.0;
    if grid.dt() >= limit {
        return Err(Error::UnresolvedDuration {
            dt: grid.dt(),
            limit,
        });
    }
    // Analytic Gaussian tail mass beyond the window edges, relative to the
    // full integral; rejects configurations that would wrap around the
    // periodic grid.
    let k = 4.0 * std::f64::consts::LN_2 / (duration_fwhm * duration_fwhm);
    let tail = 0.5
        * (libm::erfc(k.sqrt() * (grid.t_max() - center))
            + libm::erfc(k.sqrt() * (center - grid.t_min())));
    if tail >= 1e-8 || tail.is_nan() {
        return Err(Error::PulseClipped { tail_mass: tail });
    }

    // Peak intensity so that (1/2pi) integral |alpha|^2 dt = photon_number.
    let peak = TAU * photon_number
        / (duration_fwhm * (std::f64::consts::PI / (4.0 * std::f64::consts::LN_2)).sqrt());
    let amp = peak.sqrt();
    let samples = grid
        .times()
        .map(|t| {
            let u = t - center;
            Complex64::new(amp * (-0.5 * k * u * u).exp(), 0.0)
        })
        .collect();
    Envelope::new(grid, samples, bandwidth)
}

/// Scalar diagnostics of an envelope. Phase, duration and centroid are
/// undefined (None) for an identically zero envelope.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PulseMetrics {
    pub photon_number: f64,
    pub peak_phase: Option<f64>,
    pub rms_duration: Option<f64>,
    pub centroid: Option<f64>,
}

pub fn pulse_metrics(env: &Envelope) -> PulseMetrics {
    let dt = env.grid.dt();
    let photon_number = env.photon_number();
    let total = trapezoid(&env.samples, dt, |s| s.norm_sqr());
    if total == 0.0 {
        return PulseMetrics {
            photon_number: 0.0,
            peak_phase: None,
            rms_duration: None,
            centroid: None,
        };
    }

    let mut peak_idx = 0;
    let mut peak_val = 0.0;
    for (k, s) in env.samples.iter().enumerate() {
        let v = s.norm_sqr();
        if v > peak_val {
            peak_val = v;
            peak_idx = k;
        }
    }

    let weighted: Vec<(f64, f64)> = env
        .samples
        .iter()
        .enumerate()
        .map(|(k, s)| (env.grid.time(k), s.norm_sqr()))
        .collect();
    let first = trapezoid(&weighted, dt, |(t, w)| t * w);
    let centroid = first / total;
    let second = trapezoid(&weighted, dt, |(t, w)| (t - centroid).powi(2) * w);

    PulseMetrics {
        photon_number,
        peak_phase: Some(env.samples[peak_idx].arg()),
        rms_duration: Some((second / total).sqrt()),
        centroid: Some(centroid),
    }
}

// --- serialization -------------------------------------------------------
//
// Text: '#'-prefixed header, then one "t re im" row per sample, 17
// significant digits.
//
// Binary (little endian): 16-byte header = 4-byte magic "SLE1", u32
// n_points, f64 dt; then n_points records of (t, re, im) as f64.

const MAGIC: &[u8; 4] = b"SLE1";

pub fn write_envelope_text(env: &Envelope, mut w: impl Write) -> Result<()> {
    writeln!(w, "# envelope n_points = {}", env.grid.n_points())?;
    writeln!(w, "# dt = {:.16e}", env.grid.dt())?;
    writeln!(w, "# bandwidth = {:.16e}", env.bandwidth)?;
    writeln!(w, "# columns: t re im")?;
    for (k, s) in env.samples.iter().enumerate() {
        writeln!(w, "{:.16e} {:.16e} {:.16e}", env.grid.time(k), s.re, s.im)?;
    }
    Ok(())
}

pub fn read_envelope_text(r: impl Read, bandwidth: f64) -> Result<Envelope> {
    let reader = std::io::BufReader::new(r);
    let mut rows: Vec<(f64, Complex64)> = Vec::new();
    for line in reader.lines() {
        let line = line?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut it = line.split_whitespace();
        let mut next = || -> Result<f64> {
            it.next()
                .ok_or_else(|| Error::EnvelopeParse("short row".into()))?
                .parse::<f64>()
                .map_err(|e| Error::EnvelopeParse(format!("bad number: {e}")))
        };
        let t = next()?;
        let re = next()?;
        let im = next()?;
        rows.push((t, Complex64::new(re, im)));
    }
    envelope_from_rows(rows, bandwidth)
}

pub fn write_envelope_binary(env: &Envelope, mut w: impl Write) -> Result<()> {
    w.write_all(MAGIC)?;
    w.write_all(&(env.grid.n_points() as u32).to_le_bytes())?;
    w.write_all(&env.grid.dt().to_le_bytes())?;
    for (k, s) in env.samples.iter().enumerate() {
        w.write_all(&env.grid.time(k).to_le_bytes())?;
        w.write_all(&s.re.to_le_bytes())?;
        w.write_all(&s.im.to_le_bytes())?;
    }
    Ok(())
}

pub fn read_envelope_binary(mut r: impl Read, bandwidth: f64) -> Result<Envelope> {
    let mut magic = [0u8; 4];
    r.read_exact(&mut magic)?;
    if &magic != MAGIC {
        return Err(Error::EnvelopeParse("bad magic".into()));
    }
    let mut b4 = [0u8; 4];
    r.read_exact(&mut b4)?;
    let n = u32::from_le_bytes(b4) as usize;
    let mut b8 = [0u8; 8];
    r.read_exact(&mut b8)?;
    let dt = f64::from_le_bytes(b8);
    let mut rows = Vec::with_capacity(n);
    for _ in 0..n {
        let mut rec = [0u8; 24];
        r.read_exact(&mut rec)?;
        let t = f64::from_le_bytes(rec[0..8].try_into().unwrap());
        let re = f64::from_le_bytes(rec[8..16].try_into().unwrap());
        let im = f64::from_le_bytes(rec[16..24].try_into().unwrap());
        rows.push((t, Complex64::new(re, im)));
    }
    let env = envelope_from_rows(rows, bandwidth)?;
    if (env.grid.dt() - dt).abs() > 1e-12 * dt.abs().max(1.0) {
        return Err(Error::EnvelopeParse(
            "header dt disagrees with samples".into(),
        ));
    }
    Ok(env)
}

fn envelope_from_rows(rows: Vec<(f64, Complex64)>, bandwidth: f64) -> Result<Envelope> {
    if rows.len() < 8 {
        return Err(Error::EnvelopeParse("fewer than 8 samples".into()));
    }
    let n = rows.len();
    let t0 = rows[0].0;
    let dt = rows[1].0 - rows[0].0;
    if dt <= 0.0 || dt.is_nan() {
        return Err(Error::EnvelopeParse("non-increasing time column".into()));
    }
    let grid = TimeGrid::new(n, t0, t0 + n as f64 * dt)?;
    let samples = rows.into_iter().map(|(_, s)| s).collect();
    Envelope::new(grid, samples, bandwidth)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid() -> TimeGrid {
        TimeGrid::new(1024, -8.0, 8.0).unwrap()
    }

    #[test]
    fn grid_invariants() {
        let g = grid();
        assert_eq!(g.dt(), 16.0 / 1024.0);
        assert!(TimeGrid::new(100, 0.0, 1.0).is_err()); // not a power of two
        assert!(TimeGrid::new(4, 0.0, 1.0).is_err()); // too small
        assert!(TimeGrid::new(16, 1.0, 1.0).is_err());
        // frequency grid spans +-pi/dt
        let w_edge = g.omega(512);
        assert!((w_edge.abs() - std::f64::consts::PI / g.dt()).abs() < 1e-12);
        assert_eq!(g.omega(0), 0.0);
        assert!((g.omega(1) - TAU / 16.0).abs() < 1e-15);
        assert!((g.omega(1023) + TAU / 16.0).abs() < 1e-15);
    }

    #[test]
    fn zero_photon_number_gives_zero_envelope() {
        let env = make_gaussian_pulse(grid(), 0.0, 1.0, 0.0, 1.0).unwrap();
        assert!(env.samples.iter().all(|s| s.norm() == 0.0));
        assert_eq!(env.photon_number(), 0.0);
    }

    #[test]
    fn gaussian_normalization() {
        let env = make_gaussian_pulse(grid(), 1.0, 1.0, 0.0, 1.0).unwrap();
        assert!((env.photon_number() - 1.0).abs() < 1e-9);
        let env = make_gaussian_pulse(grid(), 2.5, 0.5, 1.0, 1.0).unwrap();
        assert!((env.photon_number() - 2.5).abs() < 1e-9 * 2.5);
    }

    #[test]
    fn gaussian_peak_matches_quadrature_oracle() {
        // peak intensity must satisfy P = 2 pi n / (T sqrt(pi / 4 ln 2));
        // cross-checked against a trapezoid-rule integral of the samples.
        let n_ph = 1.0;
        let fwhm = 1.0;
        let env = make_gaussian_pulse(grid(), n_ph, fwhm, 0.0, 1.0).unwrap();
        let peak = env
            .samples
            .iter()
            .map(|s| s.norm_sqr())
            .fold(0.0_f64, f64::max);
        // independent arithmetic: 4 sqrt(pi ln 2) = 5.902658506542424
        assert!((peak - 5.902658506542423).abs() < 1e-12);
        // trapezoid oracle on the sampled intensity
        let dt = env.grid.dt();
        let quad: f64 = env.samples.iter().map(|s| s.norm_sqr()).sum::<f64>() * dt;
        assert!((quad / TAU - n_ph).abs() < 1e-9);
    }

    #[test]
    fn gaussian_rejects_unresolvable_and_clipped() {
        assert!(matches!(
            make_gaussian_pulse(grid(), 1.0, 0.1, 0.0, 1.0),
            Err(Error::UnresolvedDuration { .. })
        ));
        assert!(matches!(
            make_gaussian_pulse(grid(), 1.0, 4.0, 7.5, 1.0),
            Err(Error::PulseClipped { .. })
        ));
    }

    #[test]
    fn metrics_of_gaussian() {
        let fwhm = 1.0;
        let env = make_gaussian_pulse(grid(), 1.0, fwhm, 0.5, 1.0).unwrap();
        let m = pulse_metrics(&env);
        assert!((m.photon_number - 1.0).abs() < 1e-9);
        let sigma = fwhm / (2.0 * (2.0 * std::f64::consts::LN_2).sqrt());
        assert!((m.rms_duration.unwrap() - sigma).abs() < 0.01 * sigma);
        assert!((m.centroid.unwrap() - 0.5).abs() < 1e-9);
        assert_eq!(m.peak_phase.unwrap(), 0.0);
    }

    #[test]
    fn metrics_phase_rotation() {
        let env = make_gaussian_pulse(grid(), 1.0, 1.0, 0.0, 1.0).unwrap();
        let rot = Complex64::from_polar(1.0, std::f64::consts::FRAC_PI_3);
        let rotated = Envelope::new(
            env.grid,
            env.samples.iter().map(|s| s * rot).collect(),
            env.bandwidth,
        )
        .unwrap();
        let m = pulse_metrics(&rotated);
        assert!((m.peak_phase.unwrap() - std::f64::consts::FRAC_PI_3).abs() < 1e-12);
    }

    #[test]
    fn metrics_zero_envelope_flagged_undefined() {
        let m = pulse_metrics(&Envelope::zero(grid(), 1.0));
        assert_eq!(m.photon_number, 0.0);
        assert!(m.peak_phase.is_none());
        assert!(m.rms_duration.is_none());
        assert!(m.centroid.is_none());
    }

    #[test]
    fn out_of_band_fraction_tracks_duration() {
        // T = 2: spectral FWHM 4 ln2 / T ~ 1.39, far inside a bandwidth of 40
        let env = make_gaussian_pulse(grid(), 1.0, 2.0, 0.0, 40.0).unwrap();
        assert!(env.out_of_band_fraction() < 1e-10);
        // same pulse against a bandwidth of 1: most power out of band
        let env = make_gaussian_pulse(grid(), 1.0, 2.0, 0.0, 1.0).unwrap();
        assert!(env.out_of_band_fraction() > 0.1);
    }

    #[test]
    fn text_round_trip() {
        let env = make_gaussian_pulse(grid(), 1.0, 1.0, 0.25, 2.0).unwrap();
        let mut buf = Vec::new();
        write_envelope_text(&env, &mut buf).unwrap();
        let back = read_envelope_text(buf.as_slice(), 2.0).unwrap();
        assert_eq!(back.grid.n_points(), env.grid.n_points());
        assert!((back.grid.t_min() - env.grid.t_min()).abs() < 1e-15);
        for (a, b) in env.samples.iter().zip(&back.samples) {
            assert_eq!(a.re.to_bits(), b.re.to_bits());
            assert_eq!(a.im.to_bits(), b.im.to_bits());
        }
    }

    #[test]
    fn binary_round_trip_bit_exact() {
        let env = make_gaussian_pulse(grid(), 0.7, 1.5, -1.0, 2.0).unwrap();
        let mut buf = Vec::new();
        write_envelope_binary(&env, &mut buf).unwrap();
        assert_eq!(&buf[0..4], MAGIC);
        assert_eq!(buf.len(), 16 + 24 * env.grid.n_points());
        let back = read_envelope_binary(buf.as_slice(), 2.0).unwrap();
        for (a, b) in env.samples.iter().zip(&back.samples) {
            assert_eq!(a.re.to_bits(), b.re.to_bits());
            assert_eq!(a.im.to_bits(), b.im.to_bits());
        }
    }
}
