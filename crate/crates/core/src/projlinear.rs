//! Invertible 2×2 matrices over Q_p modulo scalars.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::padic::{PAdic, PadicContext};

/// An element of PGL₂(Q_p), stored as any matrix representative
/// `[[a, b], [c, d]]`. Equality is projective; no scaling is imposed.
#[derive(Clone)]
pub struct ProjMatrix {
    pub a: PAdic,
    pub b: PAdic,
    pub c: PAdic,
    pub d: PAdic,
}

impl ProjMatrix {
    /// Fails with [`Error::Singular`] when the determinant vanishes to precision.
    pub fn new(a: PAdic, b: PAdic, c: PAdic, d: PAdic) -> Result<Self> {
        let m = ProjMatrix { a, b, c, d };
        if m.det()?.is_zero_to_precision() {
            return Err(Error::Singular);
        }
        Ok(m)
    }

    pub fn identity(ctx: &Arc<PadicContext>) -> Self {
        Self::diag(PAdic::one(ctx), PAdic::one(ctx))
    }

    pub fn diag(x: PAdic, y: PAdic) -> Self {
        let ctx = x.context().clone();
        ProjMatrix {
            a: x,
            b: PAdic::zero(&ctx),
            c: PAdic::zero(&ctx),
            d: y,
        }
    }

    /// Parses rational entry strings, row-major.
    pub fn from_strings(ctx: &Arc<PadicContext>, rows: &[[&str; 2]; 2]) -> Result<Self> {
        let e = |s: &str| PAdic::parse(ctx, s);
        Self::new(
            e(rows[0][0])?,
            e(rows[0][1])?,
            e(rows[1][0])?,
            e(rows[1][1])?,
        )
    }

    /// Parses the JSON literal `[["a11","a12"],["a21","a22"]]`.
    pub fn from_json(ctx: &Arc<PadicContext>, value: &serde_json::Value) -> Result<Self> {
        let rows: [[String; 2]; 2] = serde_json::from_value(value.clone())
            .map_err(|e| Error::Parse(format!("matrix literal: {e}")))?;
        Self::from_strings(
            ctx,
            &[
                [rows[0][0].as_str(), rows[0][1].as_str()],
                [rows[1][0].as_str(), rows[1][1].as_str()],
            ],
        )
    }

    pub fn context(&self) -> &Arc<PadicContext> {
        self.a.context()
    }

    pub fn det(&self) -> Result<PAdic> {
        self.a.mul(&self.d)?.sub(&self.b.mul(&self.c)?)
    }

    pub fn trace(&self) -> Result<PAdic> {
        self.a.add(&self.d)
    }

    pub fn compose(&self, h: &ProjMatrix) -> Result<ProjMatrix> {
        let dot = |x: &PAdic, y: &PAdic, z: &PAdic, w: &PAdic| -> Result<PAdic> {
            x.mul(y)?.add(&z.mul(w)?)
        };
        Ok(ProjMatrix {
            a: dot(&self.a, &h.a, &self.b, &h.c)?,
            b: dot(&self.a, &h.b, &self.b, &h.d)?,
            c: dot(&self.c, &h.a, &self.d, &h.c)?,
            d: dot(&self.c, &h.b, &self.d, &h.d)?,
        })
    }

    /// The adjugate, which is the inverse up to the scalar `det`.
    pub fn inverse(&self) -> ProjMatrix {
        ProjMatrix {
            a: self.d.clone(),
            b: self.b.neg(),
            c: self.c.neg(),
            d: self.a.clone(),
        }
    }

    pub fn scale(&self, s: &PAdic) -> Result<ProjMatrix> {
        Ok(ProjMatrix {
            a: self.a.mul(s)?,
            b: self.b.mul(s)?,
            c: self.c.mul(s)?,
            d: self.d.mul(s)?,
        })
    }

    /// Scalar matrix to precision.
    pub fn is_identity(&self) -> bool {
        self.b.is_zero_to_precision()
            && self.c.is_zero_to_precision()
            && self.a.eq_to_precision(&self.d)
    }

    pub fn proj_equal(&self, h: &ProjMatrix) -> Result<bool> {
        Ok(h.inverse().compose(self)?.is_identity())
    }

    /// `max(0, v(det) - 2 v(tr))`, the translation length on the
    /// Bruhat-Tits tree read off from valuations alone.
    pub fn translation_length_by_valuation(&self) -> Result<u64> {
        let vdet = self.det()?.valuation()?;
        let tr = self.trace()?;
        let vtr_bound = tr.valuation_bound();
        if tr.is_zero_to_precision() {
            // Only a lower bound on v(tr) is known.
            return if vtr_bound == i64::MAX || vdet - 2 * vtr_bound <= 0 {
                Ok(0)
            } else {
                Err(Error::precision("trace valuation undetermined"))
            };
        }
        Ok((vdet - 2 * vtr_bound).max(0) as u64)
    }
}

impl fmt::Display for ProjMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a, self.b, self.c, self.d)
    }
}

impl fmt::Debug for ProjMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
