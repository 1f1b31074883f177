//! Polar transformation of raw regression data and spacing statistics.
//!
//! Raw observations `(x, y)` from the model `y = a0 + a1 x` are mapped to
//! the normalized form `(z, u)` with `z = arctan(x)` and
//! `u = y / sqrt(1 + x^2)`, so that `u = a0 cos(z) + a1 sin(z)` and all
//! angles lie in `(-pi/2, pi/2)`. Everything downstream (estimator, tuning
//! criteria) works on the order statistics of `z` and their spacings.

use std::io::{BufRead, BufReader, Read};
use std::path::Path;

use crate::error::{Error, Result};
use crate::util::KahanSum;

/// Raw sample of `(x, y)` pairs.
///
/// Construction validates the invariants: at least two observations (the
/// estimator sums over consecutive pairs) and finite coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    pairs: Vec<(f64, f64)>,
}

impl Dataset {
    pub fn new(pairs: Vec<(f64, f64)>) -> Result<Self> {
        if pairs.len() < 2 {
            return Err(Error::InvalidData(format!(
                "need at least 2 observations, got {}",
                pairs.len()
            )));
        }
        for (i, &(x, y)) in pairs.iter().enumerate() {
            if !x.is_finite() || !y.is_finite() {
                return Err(Error::InvalidData(format!(
                    "non-finite coordinate in observation {i}: ({x}, {y})"
                )));
            }
        }
        Ok(Self { pairs })
    }

    /// Read a two-column `x,y` CSV. A single header line is allowed; any
    /// later row that does not parse as two finite numbers is rejected with
    /// its 1-based line number.
    pub fn from_csv_path<P: AsRef<Path>>(path: P) -> Result<Self> {
        let file = std::fs::File::open(path)?;
        Self::from_csv_reader(file)
    }

    pub fn from_csv_reader<R: Read>(reader: R) -> Result<Self> {
        let mut pairs = Vec::new();
        for (idx, line) in BufReader::new(reader).lines().enumerate() {
            let line_no = idx + 1;
            let line = line?;
            let trimmed = line.trim();
            if trimmed.is_empty() {
                continue;
            }
            match parse_csv_row(trimmed) {
                Ok(pair) => pairs.push(pair),
                // Tolerate a header on the first line only.
                Err(_) if line_no == 1 => continue,
                Err(message) => return Err(Error::CsvParse { line: line_no, message }),
            }
        }
        Self::new(pairs).map_err(|e| match e {
            Error::InvalidData(msg) => Error::InvalidData(format!("csv: {msg}")),
            other => other,
        })
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn pairs(&self) -> &[(f64, f64)] {
        &self.pairs
    }

    /// Transform to the sorted polar representation.
    pub fn to_polar(&self) -> TransformedDataset {
        let mut rows: Vec<(f64, f64)> = self
            .pairs
            .iter()
            .map(|&(x, y)| (x.atan(), y / x.hypot(1.0)))
            .collect();
        // Stable sort: ties in z (probability zero under a continuous
        // design) keep input order and contribute zero spacings.
        rows.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("finite angles"));
        let (z, u) = rows.into_iter().unzip();
        TransformedDataset { z, u }
    }
}

fn parse_csv_row(row: &str) -> std::result::Result<(f64, f64), String> {
    let mut fields = row.split(',');
    let x = fields.next().unwrap_or("").trim();
    let y = fields.next().ok_or_else(|| "expected two fields `x,y`".to_string())?.trim();
    if fields.next().is_some() {
        return Err("expected exactly two fields `x,y`".to_string());
    }
    let x: f64 = x.parse().map_err(|_| format!("cannot parse `{x}` as a number"))?;
    let y: f64 = y.parse().map_err(|_| format!("cannot parse `{y}` as a number"))?;
    if !x.is_finite() || !y.is_finite() {
        return Err(format!("non-finite value ({x}, {y})"));
    }
    Ok((x, y))
}

/// Sample in polar form: angles sorted ascending with the paired `u`
/// values carried along. Immutable after construction; all operations are
/// pure reads.
#[derive(Debug, Clone, PartialEq)]
pub struct TransformedDataset {
    z: Vec<f64>,
    u: Vec<f64>,
}

impl TransformedDataset {
    pub fn n(&self) -> usize {
        self.z.len()
    }

    /// Angles `z_(1) <= ... <= z_(n)`.
    pub fn z_sorted(&self) -> &[f64] {
        &self.z
    }

    /// `u_paired()[j]` is the `u` value whose angle is `z_sorted()[j]`.
    pub fn u_paired(&self) -> &[f64] {
        &self.u
    }

    /// Truncation window for threshold `delta`: the indices `j` for which
    /// both `z_(j)` and `z_(j+1)` lie in `[-pi/2 + delta, pi/2 - delta]`,
    /// together with the extreme retained angles. When fewer than two
    /// observations survive, the window is empty and the boundary values
    /// fall back to `-pi/2` and `pi/2`.
    pub fn window(&self, delta: f64) -> Result<WindowInfo> {
        if !(0.0..std::f64::consts::FRAC_PI_2).contains(&delta) {
            return Err(Error::InvalidParameter(format!(
                "delta must lie in [0, pi/2), got {delta}"
            )));
        }
        let lo_bound = -std::f64::consts::FRAC_PI_2 + delta;
        let hi_bound = std::f64::consts::FRAC_PI_2 - delta;
        // First index with z >= lo_bound and one past the last with
        // z <= hi_bound; the retained block is contiguous because z is
        // sorted.
        let start = self.z.partition_point(|&z| z < lo_bound);
        let end = self.z.partition_point(|&z| z <= hi_bound);
        if end.saturating_sub(start) < 2 {
            return Ok(WindowInfo {
                delta,
                left: -std::f64::consts::FRAC_PI_2,
                right: std::f64::consts::FRAC_PI_2,
                active: 0..0,
                is_empty: true,
            });
        }
        Ok(WindowInfo {
            delta,
            left: self.z[start],
            right: self.z[end - 1],
            active: start..end - 1,
            is_empty: false,
        })
    }

    /// Sum of `(z_(j+1) - z_(j))^kappa` over the `delta`-window; zero on an
    /// empty window.
    pub fn spacing_power_sum(&self, delta: f64, kappa: f64) -> Result<f64> {
        if !(kappa >= 1.0) {
            return Err(Error::InvalidParameter(format!(
                "kappa must be >= 1, got {kappa}"
            )));
        }
        let win = self.window(delta)?;
        let mut acc = KahanSum::new();
        for j in win.active {
            acc.add((self.z[j + 1] - self.z[j]).powf(kappa));
        }
        Ok(acc.total())
    }
}

/// Window boundaries and the active index range of the truncated sum.
#[derive(Debug, Clone, PartialEq)]
pub struct WindowInfo {
    pub delta: f64,
    /// Smallest retained angle; `-pi/2` when the window is empty.
    pub left: f64,
    /// Largest retained angle; `pi/2` when the window is empty.
    pub right: f64,
    /// Indices `j` with both `z_(j)` and `z_(j+1)` retained.
    pub active: std::ops::Range<usize>,
    pub is_empty: bool,
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, SQRT_2};

    fn dataset(pairs: &[(f64, f64)]) -> Dataset {
        Dataset::new(pairs.to_vec()).unwrap()
    }

    #[test]
    fn polar_transform_known_points() {
        let td = dataset(&[(0.0, 3.0), (1.0, 2.0), (-1.0, 0.0)]).to_polar();
        // Sorted by z: (-1, 0), (0, 3), (1, 2).
        assert_abs_diff_eq!(td.z_sorted()[0], -FRAC_PI_4, epsilon = 1e-15);
        assert_abs_diff_eq!(td.u_paired()[0], 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(td.z_sorted()[1], 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(td.u_paired()[1], 3.0, epsilon = 1e-15);
        assert_abs_diff_eq!(td.z_sorted()[2], FRAC_PI_4, epsilon = 1e-15);
        assert_abs_diff_eq!(td.u_paired()[2], SQRT_2, epsilon = 1e-15);
    }

    #[test]
    fn rejects_non_finite_and_tiny_samples() {
        assert!(Dataset::new(vec![(0.0, 1.0)]).is_err());
        assert!(Dataset::new(vec![(f64::NAN, 1.0), (0.0, 0.0)]).is_err());
        assert!(Dataset::new(vec![(0.0, f64::INFINITY), (0.0, 0.0)]).is_err());
    }

    #[test]
    fn window_truncates_per_definition() {
        // z = {-1.0, 0.2, 1.4}, delta = 0.3: pi/2 - 0.3 ~ 1.2708 < 1.4.
        let td = polar_from_z(&[-1.0, 0.2, 1.4]);
        let win = td.window(0.3).unwrap();
        assert!(!win.is_empty);
        assert_abs_diff_eq!(win.left, -1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(win.right, 0.2, epsilon = 1e-15);
        assert_eq!(win.active, 0..1);
    }

    #[test]
    fn window_empty_fallback() {
        let td = polar_from_z(&[-1.5, 1.5]);
        let win = td.window(0.3).unwrap();
        assert!(win.is_empty);
        assert_eq!(win.active.len(), 0);
        assert_abs_diff_eq!(win.left, -FRAC_PI_2, epsilon = 0.0);
        assert_abs_diff_eq!(win.right, FRAC_PI_2, epsilon = 0.0);
    }

    #[test]
    fn window_delta_zero_keeps_everything() {
        let td = polar_from_z(&[-0.9, -0.1, 0.4, 1.2]);
        let win = td.window(0.0).unwrap();
        assert_abs_diff_eq!(win.left, -0.9, epsilon = 0.0);
        assert_abs_diff_eq!(win.right, 1.2, epsilon = 0.0);
        assert_eq!(win.active, 0..3);
    }

    #[test]
    fn window_rejects_bad_delta() {
        let td = polar_from_z(&[-0.5, 0.5]);
        assert!(td.window(-0.1).is_err());
        assert!(td.window(FRAC_PI_2).is_err());
    }

    #[test]
    fn spacing_power_sum_examples() {
        let td = polar_from_z(&[0.0, 0.1, 0.3]);
        let s2 = td.spacing_power_sum(0.01, 2.0).unwrap();
        assert_abs_diff_eq!(s2, 0.1f64.powi(2) + 0.2f64.powi(2), epsilon = 1e-15);

        // Empty window sums to zero.
        let td = polar_from_z(&[-1.5, 1.5]);
        assert_eq!(td.spacing_power_sum(0.3, 2.0).unwrap(), 0.0);

        // kappa = 1, delta = 0 telescopes to the z-range.
        let td = polar_from_z(&[-0.7, -0.2, 0.05, 0.6]);
        let s1 = td.spacing_power_sum(0.0, 1.0).unwrap();
        assert_abs_diff_eq!(s1, 0.6 - (-0.7), epsilon = 1e-12);

        assert!(td.spacing_power_sum(0.0, 0.5).is_err());
    }

    #[test]
    fn csv_roundtrip_and_errors() {
        let csv = "x,y\n0.0,3.0\n1.0,2.0\n-1.0,0.0\n";
        let ds = Dataset::from_csv_reader(csv.as_bytes()).unwrap();
        assert_eq!(ds.len(), 3);
        assert_eq!(ds.pairs()[0], (0.0, 3.0));

        // Headerless input parses too.
        let ds = Dataset::from_csv_reader("0.5,1.5\n2.5,-3.0\n".as_bytes()).unwrap();
        assert_eq!(ds.len(), 2);

        // A malformed row past the first line is rejected with its line
        // number.
        let bad = "x,y\n1,1\n2,2\n3,3\n4,4\n5,5\nabc,1.0\n";
        match Dataset::from_csv_reader(bad.as_bytes()) {
            Err(Error::CsvParse { line, .. }) => assert_eq!(line, 7),
            other => panic!("expected CsvParse error, got {other:?}"),
        }

        // Wrong field count.
        let bad = "1,2\n3\n";
        match Dataset::from_csv_reader(bad.as_bytes()) {
            Err(Error::CsvParse { line, .. }) => assert_eq!(line, 2),
            other => panic!("expected CsvParse error, got {other:?}"),
        }
    }

    /// Helper: build a transformed dataset with prescribed angles
    /// (u values irrelevant).
    pub(crate) fn polar_from_z(z: &[f64]) -> TransformedDataset {
        let pairs: Vec<(f64, f64)> = z.iter().map(|&zi| (zi.tan(), 0.0)).collect();
        let td = Dataset::new(pairs).unwrap().to_polar();
        // tan/atan roundtrip keeps angles to ~1 ulp; snap to the exact
        // requested values so tests can assert crisply.
        let mut z_sorted = z.to_vec();
        z_sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
        TransformedDataset { z: z_sorted, u: td.u }
    }
}
