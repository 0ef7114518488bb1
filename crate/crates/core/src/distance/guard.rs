use crate::Scalar;

/// Substitutes safe values for vanishing denominators, log arguments and
/// out-of-domain components, counting every substitution.
///
/// Both backends route all guarded arithmetic through here, so a strict
/// caller can turn any non-zero `trips` into a domain error.
#[derive(Debug, Clone, Copy)]
pub struct Guard<T> {
    eps: T,
    pub trips: u32,
}

impl<T: Scalar> Default for Guard<T> {
    fn default() -> Self {
        Guard {
            eps: T::guard_eps(),
            trips: 0,
        }
    }
}

impl<T: Scalar> Guard<T> {
    #[inline(always)]
    pub fn den(&mut self, d: T) -> T {
        if d.abs() < self.eps {
            self.trips += 1;
            self.eps
        } else {
            d
        }
    }

    #[inline(always)]
    pub fn ln(&mut self, a: T) -> T {
        if a < self.eps {
            self.trips += 1;
            self.eps.ln()
        } else {
            a.ln()
        }
    }

    /// Components of non-negative-domain measures.
    #[inline(always)]
    pub fn nn(&mut self, v: T) -> T {
        if v < T::zero() {
            self.trips += 1;
            T::zero()
        } else {
            v
        }
    }

    /// Components of positive-domain measures.
    #[inline(always)]
    pub fn pos(&mut self, v: T) -> T {
        if v < self.eps {
            self.trips += 1;
            self.eps
        } else {
            v
        }
    }
}

/// Square root that maps rounding-induced negative arguments to zero.
#[inline(always)]
pub fn sqrt0<T: Scalar>(a: T) -> T {
    a.max(T::zero()).sqrt()
}

/// Clears rounding-induced negative results.
#[inline(always)]
pub fn finish<T: Scalar>(v: T) -> T {
    if v < T::zero() {
        T::zero()
    } else {
        v
    }
}
