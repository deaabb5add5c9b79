//! One- and two-axis parameter grids.

use psmetro::Params;
use rayon::prelude::*;

use crate::error::CliError;
use crate::point::{run_point, Quantity, ResultRow};

pub const AXIS_NAMES: [&str; 10] = ["alpha", "beta", "g", "theta", "phi", "tau", "T", "eta", "m", "v"];

#[derive(Debug, Clone, PartialEq)]
pub struct Axis {
    pub name: &'static str,
    pub start: f64,
    pub stop: f64,
    pub count: usize,
}

impl Axis {
    pub fn parse(s: &str) -> Result<Axis, CliError> {
        let bad = |why: &str| CliError::Usage(format!("invalid axis `{s}`: {why}"));
        let parts: Vec<&str> = s.split(':').collect();
        let [name, start, stop, count] = parts[..] else {
            return Err(bad("expected name:start:stop:count"));
        };
        let name = AXIS_NAMES
            .into_iter()
            .find(|n| *n == name)
            .ok_or_else(|| bad(&format!("unknown parameter (expected one of {})", AXIS_NAMES.join(", "))))?;
        let num = |x: &str| x.parse::<f64>().ok().filter(|v| v.is_finite());
        let (Some(start), Some(stop)) = (num(start), num(stop)) else {
            return Err(bad("start and stop must be finite numbers"));
        };
        let count: usize = count.parse().map_err(|_| bad("count must be an integer"))?;
        if count < 2 {
            return Err(bad("count must be >= 2"));
        }
        let axis = Axis { name, start, stop, count };
        if matches!(name, "m" | "v") {
            for x in axis.values() {
                if x.fract() != 0.0 || x < 0.0 {
                    return Err(bad(&format!("{name} takes non-negative integers, grid gives {x}")));
                }
            }
        }
        Ok(axis)
    }

    pub fn values(&self) -> Vec<f64> {
        let n = self.count - 1;
        (0..=n)
            .map(|i| if i == n { self.stop } else { self.start + (self.stop - self.start) * i as f64 / n as f64 })
            .collect()
    }
}

pub fn set_param(p: &mut Params, name: &str, x: f64) {
    match name {
        "alpha" => p.alpha = x,
        "beta" => p.beta = x,
        "g" => p.g = x,
        "theta" => p.theta = x,
        "phi" => p.phi = x,
        "tau" => p.tau = x,
        "T" => p.t_loss = x,
        "eta" => p.eta = x,
        "m" => p.m = x as u32,
        "v" => p.v = x as u32,
        _ => unreachable!("axis names are checked on parse"),
    }
}

#[derive(Debug, Clone)]
pub struct SweepSpec {
    pub axes: Vec<Axis>,
    pub fixed: Params,
    pub quantities: Vec<Quantity>,
}

impl SweepSpec {
    pub fn new(axes: Vec<Axis>, fixed: Params, explicit: &[&str], quantities: Vec<Quantity>) -> Result<Self, CliError> {
        if axes.is_empty() || axes.len() > 2 {
            return Err(CliError::Usage(format!("a sweep takes 1 or 2 axes, got {}", axes.len())));
        }
        if axes.len() == 2 && axes[0].name == axes[1].name {
            return Err(CliError::Usage(format!("axis `{}` given twice", axes[0].name)));
        }
        for a in &axes {
            if explicit.contains(&a.name) {
                return Err(CliError::Usage(format!("`{}` is both a sweep axis and a fixed value", a.name)));
            }
        }
        let spec = SweepSpec { axes, fixed, quantities };
        for p in spec.points() {
            p.validate()?;
        }
        Ok(spec)
    }

    /// Grid points, first axis outermost.
    pub fn points(&self) -> Vec<Params> {
        let mut out = vec![self.fixed];
        for axis in &self.axes {
            let vals = axis.values();
            out = out
                .iter()
                .flat_map(|p| {
                    vals.iter().map(move |&x| {
                        let mut q = *p;
                        set_param(&mut q, axis.name, x);
                        q
                    })
                })
                .collect();
        }
        out
    }

    pub fn run(&self) -> Result<Vec<ResultRow>, CliError> {
        self.points().par_iter().map(|p| run_point(p, &self.quantities, None)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn axis_parsing() {
        let a = Axis::parse("tau:0:1:5").unwrap();
        assert_eq!(a.values(), vec![0.0, 0.25, 0.5, 0.75, 1.0]);
        for bad in ["tau:0:1:1", "tua:0:1:3", "tau:0:1", "m:0:1:3", "phi:a:1:3"] {
            assert!(Axis::parse(bad).is_err(), "{bad}");
        }
        assert!(Axis::parse("m:0:3:4").is_ok());
    }

    #[test]
    fn row_major_order() {
        let axes = vec![Axis::parse("phi:1:2:2").unwrap(), Axis::parse("tau:0.2:0.4:3").unwrap()];
        let s = SweepSpec::new(axes, Params::default(), &[], vec![Quantity::F]).unwrap();
        let pts: Vec<_> = s.points().iter().map(|p| (p.phi, p.tau)).collect();
        assert_eq!(pts[..4], [(1.0, 0.2), (1.0, 0.30000000000000004), (1.0, 0.4), (2.0, 0.2)]);
    }

    #[test]
    fn axis_conflicts_rejected() {
        let a = || Axis::parse("tau:0.2:0.4:3").unwrap();
        assert!(SweepSpec::new(vec![a()], Params::default(), &["tau"], vec![Quantity::F]).is_err());
        assert!(SweepSpec::new(vec![a(), a()], Params::default(), &[], vec![Quantity::F]).is_err());
    }
}
