use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CcdfPoint {
    pub degree: usize,
    pub empirical: f64,
    pub fitted: f64,
}

/// Exponential fit to a degree sample over `[d_min, inf)` with the sample
/// mean, `lambda = 1 / (mean - d_min)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DegreeFit {
    pub degrees: Vec<usize>,
    pub d_min: usize,
    pub mean: f64,
    pub lambda: f64,
    /// One point per distinct observed degree, ascending.
    pub ccdf_points: Vec<CcdfPoint>,
}

/// Fits the total (in + out) degree of every vertex.
pub fn degree_fit(g: &Graph) -> Result<DegreeFit> {
    let degrees = g
        .vertices()
        .ids()
        .map(|v| g.in_degree(v) + g.out_degree(v))
        .collect();
    fit_exponential(degrees)
}

pub fn fit_exponential(mut degrees: Vec<usize>) -> Result<DegreeFit> {
    degrees.sort_unstable();
    let (Some(&d_min), Some(&d_max)) = (degrees.first(), degrees.last()) else {
        return Err(Error::DegenerateFit("no degrees to fit".into()));
    };
    if d_min == d_max {
        return Err(Error::DegenerateFit(format!(
            "every vertex has degree {d_min}"
        )));
    }
    let n = degrees.len() as f64;
    let mean = degrees.iter().map(|&d| d as f64).sum::<f64>() / n;
    let lambda = 1.0 / (mean - d_min as f64);

    let mut ccdf_points = Vec::new();
    let mut i = 0;
    while i < degrees.len() {
        let d = degrees[i];
        ccdf_points.push(CcdfPoint {
            degree: d,
            empirical: (degrees.len() - i) as f64 / n,
            fitted: (-lambda * (d - d_min) as f64).exp(),
        });
        while i < degrees.len() && degrees[i] == d {
            i += 1;
        }
    }

    Ok(DegreeFit {
        degrees,
        d_min,
        mean,
        lambda,
        ccdf_points,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::load_graph;

    #[test]
    fn constant_degrees_are_degenerate() {
        let g = load_graph("a\tb\n").unwrap();
        assert!(matches!(degree_fit(&g), Err(Error::DegenerateFit(_))));
        assert!(fit_exponential(vec![3; 5]).is_err());
        assert!(fit_exponential(vec![]).is_err());
    }

    #[test]
    fn small_sample() {
        let fit = fit_exponential(vec![1, 3, 1, 2]).unwrap();
        assert_eq!(fit.d_min, 1);
        assert_eq!(fit.mean, 1.75);
        assert_eq!(fit.lambda, 1.0 / 0.75);
        let pts: Vec<_> = fit.ccdf_points.iter().map(|p| (p.degree, p.empirical)).collect();
        assert_eq!(pts, [(1, 1.0), (2, 0.5), (3, 0.25)]);
        assert_eq!(fit.ccdf_points[0].fitted, 1.0);
    }

    #[test]
    fn path_degrees() {
        let fit = degree_fit(&load_graph("a\tb\nb\tc\n").unwrap()).unwrap();
        assert_eq!(fit.degrees, [1, 1, 2]);
        assert!(fit.lambda > 0.0);
    }
}
