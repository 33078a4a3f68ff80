//! Uniform evaluation grids.

use std::str::FromStr;

use crate::error::CliError;

/// `count` equally spaced points from `start` to `stop` inclusive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub start: f64,
    pub stop: f64,
    pub count: usize,
}

impl FromStr for Grid {
    type Err = CliError;

    /// `START,STOP,COUNT`.
    fn from_str(s: &str) -> Result<Self, CliError> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        let [start, stop, count] = parts[..] else {
            return Err(CliError::config(format!("grid {s:?} must be START,STOP,COUNT")));
        };
        let num = |v: &str| v.parse::<f64>().map_err(|_| CliError::config(format!("grid bound {v:?} is not a number")));
        let grid = Grid {
            start: num(start)?,
            stop: num(stop)?,
            count: count.parse().map_err(|_| CliError::config(format!("grid count {count:?} is not a count")))?,
        };
        grid.validate()?;
        Ok(grid)
    }
}

impl Grid {
    pub fn single(x: f64) -> Self {
        Grid { start: x, stop: x, count: 1 }
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if self.count == 0 {
            return Err(CliError::config("grid count must be positive"));
        }
        if !self.start.is_finite() || !self.stop.is_finite() {
            return Err(CliError::config("grid bounds must be finite"));
        }
        Ok(())
    }

    pub fn points(&self) -> Vec<f64> {
        if self.count == 1 {
            return vec![self.start];
        }
        let step = (self.stop - self.start) / (self.count - 1) as f64;
        (0..self.count)
            .map(|i| if i + 1 == self.count { self.stop } else { self.start + step * i as f64 })
            .collect()
    }
}

/// Energies usable as physical inputs.
///
/// A grid that touches `|ε| = 1` or has points on both sides of it is
/// refused unless `split` is set, in which case the threshold points are
/// dropped and the rest is kept in order.
pub fn energy_points(grid: &Grid, split: bool) -> Result<Vec<f64>, CliError> {
    let pts = grid.points();
    let side = |e: f64| (e.abs() - 1.0).signum();
    let touches = pts.iter().any(|e| e.abs() == 1.0);
    let crosses = pts.windows(2).any(|w| side(w[0]) != side(w[1]) || (w[0].signum() != w[1].signum() && w[0].abs() > 1.0));
    if (touches || crosses) && !split {
        return Err(CliError::ThresholdCrossing);
    }
    Ok(pts.into_iter().filter(|e| e.abs() != 1.0).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn endpoints_are_exact() {
        let g: Grid = "-0.3, 0.7, 11".parse().unwrap();
        let p = g.points();
        assert_eq!(p.len(), 11);
        assert_eq!(p[0], -0.3);
        assert_eq!(p[10], 0.7);
        assert_eq!(Grid::single(2.0).points(), vec![2.0]);
    }

    #[test]
    fn malformed() {
        assert!("1,2".parse::<Grid>().is_err());
        assert!("1,2,0".parse::<Grid>().is_err());
        assert!("a,2,3".parse::<Grid>().is_err());
    }

    #[test]
    fn threshold_guard() {
        let crossing = Grid { start: 0.5, stop: 1.5, count: 5 };
        assert!(matches!(energy_points(&crossing, false), Err(CliError::ThresholdCrossing)));
        assert_eq!(energy_points(&crossing, true).unwrap(), vec![0.5, 0.75, 1.25, 1.5]);
        let gap = Grid { start: -2.0, stop: 2.0, count: 2 };
        assert!(energy_points(&gap, false).is_err());
        let bound = Grid { start: -0.9, stop: 0.9, count: 7 };
        assert_eq!(energy_points(&bound, false).unwrap().len(), 7);
        let upper = Grid { start: 1.1, stop: 3.0, count: 4 };
        assert_eq!(energy_points(&upper, false).unwrap().len(), 4);
    }
}
