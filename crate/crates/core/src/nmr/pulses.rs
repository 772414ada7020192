//! Ideal pulse sequences and their propagators.
//!
//! A [`PulseSeq`] lists elements in time order; the first element acts
//! first, so the compiled propagator is `U_last ⋯ U_first`. Spins are
//! 0-based in the API and 1-based in the text format.

use std::f64::consts::{FRAC_PI_2, PI, TAU};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::linalg::{c, kron_all, r, CMat, C64};
use crate::nmr::spin::SpinSystem;

/// RF phase axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    X,
    Y,
    MinusX,
    MinusY,
}

impl Axis {
    /// Unit vector `(n_x, n_y)` in the transverse plane.
    fn direction(self) -> (f64, f64) {
        match self {
            Axis::X => (1.0, 0.0),
            Axis::Y => (0.0, 1.0),
            Axis::MinusX => (-1.0, 0.0),
            Axis::MinusY => (0.0, -1.0),
        }
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axis::X => "x",
            Axis::Y => "y",
            Axis::MinusX => "-x",
            Axis::MinusY => "-y",
        })
    }
}

impl FromStr for Axis {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "x" | "+x" => Ok(Axis::X),
            "y" | "+y" => Ok(Axis::Y),
            "-x" => Ok(Axis::MinusX),
            "-y" => Ok(Axis::MinusY),
            other => Err(format!("unknown axis `{other}`")),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum PulseElement {
    /// `exp(−i·angle·I_axis^spin)`.
    Rf { spin: usize, angle: f64, axis: Axis },
    /// Free evolution under the coupling of spins `i` and `j` for long
    /// enough to give `exp(−i·angle·2 I_z^i I_z^j)`.
    CouplingDelay { i: usize, j: usize, angle: f64 },
    /// `exp(−i·angle·I_z^spin)`, applied as the composite
    /// `(π/2)_{−x} (angle)_y (π/2)_x`.
    ZRotation { spin: usize, angle: f64 },
}

impl PulseElement {
    fn spins(&self) -> Vec<usize> {
        match self {
            PulseElement::Rf { spin, .. } | PulseElement::ZRotation { spin, .. } => vec![*spin],
            PulseElement::CouplingDelay { i, j, .. } => vec![*i, *j],
        }
    }

    /// The hard pulses this element is made of.
    pub fn expand(&self) -> Vec<PulseElement> {
        match *self {
            PulseElement::ZRotation { spin, angle } => vec![
                PulseElement::Rf { spin, angle: FRAC_PI_2, axis: Axis::MinusX },
                PulseElement::Rf { spin, angle, axis: Axis::Y },
                PulseElement::Rf { spin, angle: FRAC_PI_2, axis: Axis::X },
            ],
            ref other => vec![other.clone()],
        }
    }
}

impl fmt::Display for PulseElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PulseElement::Rf { spin, angle, axis } => write!(f, "rf {} {} {}", spin + 1, format_angle(*angle), axis),
            PulseElement::CouplingDelay { i, j, angle } => {
                write!(f, "jdelay {} {} {}", i + 1, j + 1, format_angle(*angle))
            }
            PulseElement::ZRotation { spin, angle } => write!(f, "zrot {} {}", spin + 1, format_angle(*angle)),
        }
    }
}

/// Time-ordered list of pulse elements.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct PulseSeq {
    elements: Vec<PulseElement>,
}

impl PulseSeq {
    pub fn new(elements: Vec<PulseElement>) -> Self {
        Self { elements }
    }

    pub fn elements(&self) -> &[PulseElement] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn push(&mut self, e: PulseElement) {
        self.elements.push(e);
    }

    /// Appends `other` after `self` in time.
    pub fn then(mut self, other: PulseSeq) -> PulseSeq {
        self.elements.extend(other.elements);
        self
    }

    /// The sequence with composite z rotations expanded into hard pulses.
    pub fn expanded(&self) -> PulseSeq {
        PulseSeq::new(self.elements.iter().flat_map(PulseElement::expand).collect())
    }

    pub fn max_spin(&self) -> Option<usize> {
        self.elements.iter().flat_map(PulseElement::spins).max()
    }

    /// Total free-evolution time in seconds, using the couplings of `sys`.
    ///
    /// Each coupling angle is realized by the shortest non-negative delay
    /// that gives the same propagator up to global phase.
    pub fn total_delay_seconds(&self, sys: &SpinSystem) -> Result<f64> {
        self.elements
            .iter()
            .filter_map(|e| match *e {
                PulseElement::CouplingDelay { i, j, angle } => Some((i, j, angle)),
                _ => None,
            })
            .map(|(i, j, angle)| {
                check_spin(i, sys.n_spins())?;
                check_spin(j, sys.n_spins())?;
                coupling_delay_seconds(angle, sys.coupling(i, j))
            })
            .sum()
    }

    /// Parses the line format: `rf <spin> <angle> <axis>`,
    /// `jdelay <i> <j> <angle>`, `zrot <spin> <angle>`. Blank lines and
    /// `#` comments are ignored.
    pub fn parse(text: &str) -> Result<PulseSeq> {
        let mut elements = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |message: String| Error::Parse {
                line: lineno + 1,
                message,
            };
            let tokens: Vec<&str> = line.split_whitespace().collect();
            let spin = |tok: &str| -> Result<usize> {
                match tok.parse::<usize>() {
                    Ok(s) if s >= 1 => Ok(s - 1),
                    _ => Err(err(format!("bad spin index `{tok}` (spins are numbered from 1)"))),
                }
            };
            let angle = |tok: &str| parse_angle(tok).map_err(&err);
            let element = match tokens.as_slice() {
                ["rf", s, a, ax] => PulseElement::Rf {
                    spin: spin(s)?,
                    angle: angle(a)?,
                    axis: ax.parse().map_err(err)?,
                },
                ["jdelay", i, j, a] => {
                    let (i, j) = (spin(i)?, spin(j)?);
                    if i == j {
                        return Err(err("coupling delay needs two distinct spins".into()));
                    }
                    PulseElement::CouplingDelay { i, j, angle: angle(a)? }
                }
                ["zrot", s, a] => PulseElement::ZRotation {
                    spin: spin(s)?,
                    angle: angle(a)?,
                },
                _ => return Err(err(format!("cannot parse `{line}`"))),
            };
            elements.push(element);
        }
        Ok(PulseSeq::new(elements))
    }

    pub fn to_text(&self) -> String {
        self.elements.iter().map(|e| format!("{e}\n")).collect()
    }
}

impl fmt::Display for PulseSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Delay (s) giving coupling angle `angle` under coupling `j_hz`, using the
/// `2π` periodicity of the propagator (up to sign) to keep it non-negative.
pub fn coupling_delay_seconds(angle: f64, j_hz: f64) -> Result<f64> {
    if j_hz == 0.0 {
        return if angle.rem_euclid(TAU) == 0.0 {
            Ok(0.0)
        } else {
            Err(Error::InvalidArgument("coupling evolution between uncoupled spins".into()))
        };
    }
    // Evolution for time t under π J t · 2 I_z I_z gives angle π J t.
    let signed = if j_hz > 0.0 { angle } else { -angle };
    Ok(signed.rem_euclid(TAU) / (PI * j_hz.abs()))
}

/// Accepts plain radians or multiples of pi: `pi`, `-pi/2`, `3pi/2`,
/// `3*pi/4`, `0.25`.
pub fn parse_angle(tok: &str) -> std::result::Result<f64, String> {
    let bad = || format!("bad angle `{tok}`");
    if let Ok(v) = tok.parse::<f64>() {
        return v.is_finite().then_some(v).ok_or_else(bad);
    }
    let (sign, body) = match tok.strip_prefix('-') {
        Some(rest) => (-1.0, rest),
        None => (1.0, tok.strip_prefix('+').unwrap_or(tok)),
    };
    let (numer, denom) = match body.split_once('/') {
        Some((n, d)) => (n, d.parse::<f64>().map_err(|_| bad())?),
        None => (body, 1.0),
    };
    let coeff = numer.strip_suffix("pi").ok_or_else(bad)?;
    let coeff = coeff.strip_suffix('*').unwrap_or(coeff);
    let coeff = if coeff.is_empty() {
        1.0
    } else {
        coeff.parse::<f64>().map_err(|_| bad())?
    };
    if denom == 0.0 {
        return Err(bad());
    }
    Ok(sign * coeff * PI / denom)
}

/// Writes common multiples of pi symbolically and anything else as radians.
pub fn format_angle(angle: f64) -> String {
    for denom in [1u32, 2, 4] {
        let k = angle * f64::from(denom) / PI;
        if (k - k.round()).abs() < 1e-12 && k.round() != 0.0 {
            let k = k.round() as i64;
            let numer = match k {
                1 => "pi".to_string(),
                -1 => "-pi".to_string(),
                k => format!("{k}pi"),
            };
            return if denom == 1 { numer } else { format!("{numer}/{denom}") };
        }
    }
    format!("{angle}")
}

fn check_spin(spin: usize, n_spins: usize) -> Result<()> {
    if spin >= n_spins {
        return Err(Error::UnknownSpin { spin, n_spins });
    }
    Ok(())
}

/// `exp(−iθ n·σ/2)` for a transverse axis `n`.
fn rf_matrix(angle: f64, axis: Axis) -> CMat {
    let (nx, ny) = axis.direction();
    let (s, co) = (angle / 2.0).sin_cos();
    // cos(θ/2) I − i sin(θ/2)(n_x X + n_y Y)
    let off_upper = c(-s * ny, -s * nx);
    let off_lower = c(s * ny, -s * nx);
    CMat::from_rows(vec![vec![r(co), off_upper], vec![off_lower, r(co)]])
}

fn embed_single(m: CMat, spin: usize, n_spins: usize) -> CMat {
    let factors: Vec<CMat> = (0..n_spins)
        .map(|q| if q == spin { m.clone() } else { CMat::identity(2) })
        .collect();
    kron_all(&factors)
}

fn coupling_matrix(i: usize, j: usize, angle: f64, n_spins: usize) -> CMat {
    let d = 1usize << n_spins;
    let diag: Vec<C64> = (0..d)
        .map(|idx| {
            let zi = if (idx >> (n_spins - 1 - i)) & 1 == 0 { 1.0 } else { -1.0 };
            let zj = if (idx >> (n_spins - 1 - j)) & 1 == 0 { 1.0 } else { -1.0 };
            // 2 I_z^i I_z^j has eigenvalue z_i z_j / 2.
            C64::from_polar(1.0, -angle * zi * zj / 2.0)
        })
        .collect();
    CMat::from_diag(&diag)
}

/// Propagator of a single element on an `n_spins` register.
pub fn element_propagator(e: &PulseElement, n_spins: usize) -> Result<CMat> {
    for s in e.spins() {
        check_spin(s, n_spins)?;
    }
    Ok(match *e {
        PulseElement::Rf { spin, angle, axis } => embed_single(rf_matrix(angle, axis), spin, n_spins),
        PulseElement::CouplingDelay { i, j, angle } => coupling_matrix(i, j, angle, n_spins),
        PulseElement::ZRotation { .. } => e
            .expand()
            .iter()
            .try_fold(CMat::identity(1 << n_spins), |acc, p| {
                element_propagator(p, n_spins).map(|u| &u * &acc)
            })?,
    })
}

/// Composes the sequence into one propagator on the spins of `sys`.
pub fn compile_pulses(seq: &PulseSeq, sys: &SpinSystem) -> Result<CMat> {
    compile_on(seq, sys.n_spins())
}

/// [`compile_pulses`] for a bare register size.
pub fn compile_on(seq: &PulseSeq, n_spins: usize) -> Result<CMat> {
    seq.elements
        .iter()
        .try_fold(CMat::identity(1 << n_spins), |acc, e| {
            element_propagator(e, n_spins).map(|u| &u * &acc)
        })
}

/// Coupling evolution between `(π/2)` pulses on `j`:
/// `exp(−iθ·2 I_z^i I_x^j)`.
pub fn two_spin_sandwich(i: usize, j: usize, theta: f64) -> PulseSeq {
    assert_ne!(i, j, "sandwich needs two distinct spins");
    PulseSeq::new(vec![
        PulseElement::Rf { spin: j, angle: FRAC_PI_2, axis: Axis::MinusY },
        PulseElement::CouplingDelay { i, j, angle: theta },
        PulseElement::Rf { spin: j, angle: FRAC_PI_2, axis: Axis::Y },
    ])
}

/// `exp(−iθ·2 I_z^i I_y^j)`, the x-pulse variant of [`two_spin_sandwich`].
pub fn two_spin_sandwich_y(i: usize, j: usize, theta: f64) -> PulseSeq {
    assert_ne!(i, j, "sandwich needs two distinct spins");
    PulseSeq::new(vec![
        PulseElement::Rf { spin: j, angle: FRAC_PI_2, axis: Axis::X },
        PulseElement::CouplingDelay { i, j, angle: theta },
        PulseElement::Rf { spin: j, angle: FRAC_PI_2, axis: Axis::MinusX },
    ])
}

/// `exp(−iθ·4 I_z^a I_z^b I_x^t)` as a cascade of two-spin evolutions: the
/// `a–t` sandwich is conjugated by a quarter-period `b–t` coupling
/// evolution, which maps `I_y^t` onto `2 I_z^b I_x^t`.
pub fn three_spin_cascade(a: usize, b: usize, t: usize, theta: f64) -> PulseSeq {
    assert!(a != b && b != t && a != t, "cascade needs three distinct spins");
    PulseSeq::new(vec![PulseElement::CouplingDelay { i: b, j: t, angle: FRAC_PI_2 }])
        .then(two_spin_sandwich_y(a, t, theta))
        .then(PulseSeq::new(vec![PulseElement::CouplingDelay {
            i: b,
            j: t,
            angle: 3.0 * FRAC_PI_2,
        }]))
}
