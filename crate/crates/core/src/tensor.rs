//! The tensor completion as pairs `(hall part, D part)` with D central.

use std::fmt;
use std::sync::Arc;

use crate::ccalc::Strategy;
use crate::dmodule::DVector;
use crate::error::Result;
use crate::hall::{GroupSchema, HallElement};
use crate::scalars::Ring;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TensorElement<R: Ring> {
    pub hall: HallElement<R>,
    pub d: DVector<R>,
}

impl<R: Ring> TensorElement<R> {
    pub fn new(hall: HallElement<R>, d: DVector<R>) -> Self {
        TensorElement { hall, d }
    }

    pub fn identity(schema: &Arc<GroupSchema>) -> Self {
        TensorElement::embed(HallElement::identity(schema))
    }

    /// An element of the Hall part with trivial D part.
    pub fn embed(hall: HallElement<R>) -> Self {
        TensorElement { hall, d: DVector::zero() }
    }

    /// A pure D element.
    pub fn from_d(schema: &Arc<GroupSchema>, d: DVector<R>) -> Self {
        TensorElement { hall: HallElement::identity(schema), d }
    }

    pub fn schema(&self) -> &Arc<GroupSchema> {
        self.hall.schema()
    }

    pub fn is_identity(&self) -> bool {
        self.hall.is_identity() && self.d.is_zero()
    }

    pub fn mul(&self, h: &Self) -> Result<Self> {
        Ok(TensorElement { hall: self.hall.mul(&h.hall)?, d: self.d.add(&h.d) })
    }

    pub fn inv(&self) -> Self {
        TensorElement { hall: self.hall.inv(), d: self.d.neg() }
    }

    /// `g^mu = (hall^mu, mu d + increment)`, the increment measuring how far
    /// the power is from the Hall power.
    pub fn exp(&self, mu: &R, strat: &Strategy) -> Result<Self> {
        let mut d = self.d.scale(mu);
        d.add_assign(&strat.exp_increment(self.hall.a(), mu)?);
        Ok(TensorElement { hall: self.hall.exp(mu), d })
    }

    pub fn commutator(&self, h: &Self) -> Result<Self> {
        self.inv().mul(&h.inv())?.mul(self)?.mul(h)
    }

    /// The retraction onto the Hall completion.
    pub fn mu_retract(&self) -> &HallElement<R> {
        &self.hall
    }
}

impl<R: Ring> fmt::Display for TensorElement<R> {
    /// `x^{A} y^{B} [y,x]^{C} * c(...)_t^{Q} * ...`, or `1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.hall.is_identity(), self.d.is_zero()) {
            (true, true) => f.write_str("1"),
            (false, true) => write!(f, "{}", self.hall),
            (true, false) => write!(f, "{}", self.d),
            (false, false) => write!(f, "{} * {}", self.hall, self.d),
        }
    }
}
