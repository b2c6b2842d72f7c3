//! Sampled radial profiles w(r) and their CSV form
//!
//! ```text
//! # radial_profile lambda1=... lambda2=... slope0=... tol=...
//! r,w[,w_t]
//! ```

use std::io::{BufRead, Write};

use crate::error::{Error, Result};
use crate::kinematics::Moduli;
use crate::scalar::Scalar;
use crate::textio::{fmt_num, header_num, parse_header, parse_num};

use super::spline::CubicSpline;

#[derive(Debug, Clone, PartialEq)]
pub struct RadialProfile<T> {
    pub r: Vec<T>,
    pub w: Vec<T>,
    /// ∂_r w when the producer knows it; not serialized.
    pub w_r: Option<Vec<T>>,
    pub w_t: Option<Vec<T>>,
    pub moduli: Moduli<T>,
    /// w'(0) (the series amplitude when the start is not linear)
    pub slope0: T,
    pub tol: T,
}

impl<T: Scalar> RadialProfile<T> {
    pub fn new(r: Vec<T>, w: Vec<T>, moduli: Moduli<T>, slope0: T, tol: T) -> Result<Self> {
        let p = RadialProfile {
            r,
            w,
            w_r: None,
            w_t: None,
            moduli,
            slope0,
            tol,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn with_velocity(mut self, w_t: Vec<T>) -> Result<Self> {
        self.w_t = Some(w_t);
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.r.len();
        if n < 2 {
            return Err(Error::Domain("profile needs at least two samples".into()));
        }
        if self.w.len() != n
            || self.w_t.as_ref().is_some_and(|v| v.len() != n)
            || self.w_r.as_ref().is_some_and(|v| v.len() != n)
        {
            return Err(Error::Domain("profile columns differ in length".into()));
        }
        if !(self.r[0] >= T::zero()) || self.r.windows(2).any(|p| !(p[1] > p[0])) {
            return Err(Error::Domain("profile radii must start at r >= 0 and increase strictly".into()));
        }
        if self.w.iter().chain(self.w_t.iter().flatten()).any(|v| !v.is_finite()) {
            return Err(Error::Domain("profile values must be finite".into()));
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.r.len()
    }

    pub fn is_empty(&self) -> bool {
        self.r.is_empty()
    }

    pub fn r_max(&self) -> T {
        self.r[self.r.len() - 1]
    }

    /// w at the outermost sample.
    pub fn w_end(&self) -> T {
        self.w[self.w.len() - 1]
    }

    /// w extrapolated to r = 0 (the first sample when it sits at the origin,
    /// otherwise a linear extrapolation from the first two samples).
    pub fn w_at_origin(&self) -> T {
        if self.r[0] == T::zero() {
            self.w[0]
        } else {
            let s = (self.w[1] - self.w[0]) / (self.r[1] - self.r[0]);
            self.w[0] - s * self.r[0]
        }
    }

    pub fn spline(&self) -> Result<CubicSpline<T>> {
        CubicSpline::natural(&self.r, &self.w)
    }

    pub fn velocity_spline(&self) -> Result<Option<CubicSpline<T>>> {
        self.w_t.as_ref().map(|v| CubicSpline::natural(&self.r, v)).transpose()
    }

    /// Uniform spacing if the radii are equally spaced to a relative 1e-9.
    pub fn uniform_spacing(&self) -> Option<T> {
        let n = self.r.len();
        let dr = (self.r[n - 1] - self.r[0]) / T::from_usize_lossy(n - 1);
        let ok = self
            .r
            .windows(2)
            .all(|p| ((p[1] - p[0]) - dr).abs() <= T::lit(1e-9) * dr);
        ok.then_some(dr)
    }

    pub fn write_csv<W: Write>(&self, mut out: W) -> Result<()> {
        write!(
            out,
            "# radial_profile lambda1={} lambda2={}",
            fmt_num(self.moduli.lambda1),
            fmt_num(self.moduli.lambda2)
        )?;
        if let Some([c1, c2, c3]) = self.moduli.elastic {
            write!(out, " c1={} c2={} c3={}", fmt_num(c1), fmt_num(c2), fmt_num(c3))?;
        }
        writeln!(out, " slope0={} tol={}", fmt_num(self.slope0), fmt_num(self.tol))?;
        match &self.w_t {
            None => {
                writeln!(out, "r,w")?;
                for (r, w) in self.r.iter().zip(&self.w) {
                    writeln!(out, "{},{}", fmt_num(*r), fmt_num(*w))?;
                }
            }
            Some(wt) => {
                writeln!(out, "r,w,w_t")?;
                for ((r, w), v) in self.r.iter().zip(&self.w).zip(wt) {
                    writeln!(out, "{},{},{}", fmt_num(*r), fmt_num(*w), fmt_num(*v))?;
                }
            }
        }
        Ok(())
    }

    pub fn read_csv<R: BufRead>(input: R) -> Result<Self> {
        let mut lines = input.lines();
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty profile file".into()))??;
        let map = parse_header(&header, "radial_profile")?;
        let moduli = if map.contains_key("c1") {
            let m = Moduli::from_elastic(header_num(&map, "c1")?, header_num(&map, "c2")?, header_num(&map, "c3")?)?;
            Moduli {
                lambda1: header_num(&map, "lambda1")?,
                lambda2: header_num(&map, "lambda2")?,
                ..m
            }
        } else {
            Moduli::from_couplings(header_num(&map, "lambda1")?, header_num(&map, "lambda2")?)?
        };
        let columns = lines
            .next()
            .ok_or_else(|| Error::Parse("missing column line".into()))??;
        let with_velocity = match columns.trim() {
            "r,w" => false,
            "r,w,w_t" => true,
            other => return Err(Error::Parse(format!("unexpected columns {other:?}"))),
        };
        let width = if with_velocity { 3 } else { 2 };
        let (mut r, mut w, mut wt) = (vec![], vec![], vec![]);
        for line in lines {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let f: Vec<T> = line.split(',').map(parse_num).collect::<Result<_>>()?;
            if f.len() != width {
                return Err(Error::Parse(format!("expected {width} columns, got {line:?}")));
            }
            r.push(f[0]);
            w.push(f[1]);
            if with_velocity {
                wt.push(f[2]);
            }
        }
        let p = RadialProfile::new(r, w, moduli, header_num(&map, "slope0")?, header_num(&map, "tol")?)?;
        if with_velocity {
            p.with_velocity(wt)
        } else {
            Ok(p)
        }
    }
}
