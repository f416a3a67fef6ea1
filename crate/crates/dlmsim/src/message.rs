//! Messenger primitives: the unit-vector message and the particle-like
//! carrier that moves it through the network one event at a time.

use crate::real::Real;

/// Two-dimensional unit vector (cos psi, sin psi) encoding a phase.
///
/// Invariant: `c*c + s*s == 1` within 1e-12 at all times. Construction and
/// rotation preserve this; routing stages renormalize their output.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Message<T> {
    pub c: T,
    pub s: T,
}

impl<T: Real> Message<T> {
    /// The message every freshly created messenger carries: (1, 0).
    pub fn new() -> Self {
        Message {
            c: T::one(),
            s: T::zero(),
        }
    }

    /// Unit vector at angle `psi`.
    pub fn from_angle(psi: T) -> Self {
        Message {
            c: psi.cos(),
            s: psi.sin(),
        }
    }

    /// Rotation by `phi`: (c cos phi + s sin phi, -c sin phi + s cos phi),
    /// mapping the stored angle psi to psi - phi.
    pub fn rotated(self, phi: T) -> Self {
        let (sin, cos) = phi.sin_cos();
        Message {
            c: self.c * cos + self.s * sin,
            s: -self.c * sin + self.s * cos,
        }
    }

    pub fn norm(self) -> T {
        (self.c * self.c + self.s * self.s).sqrt()
    }
}

impl<T: Real> Default for Message<T> {
    fn default() -> Self {
        Message::new()
    }
}

/// Which line of the circuit a messenger travels.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Line {
    Photon,
    Ancilla,
}

/// A particle-like carrier: occupies exactly one path (`port` is 0 or 1)
/// and holds one message. Immutable value; stages return updated copies.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Messenger<T> {
    pub line: Line,
    pub port: usize,
    pub message: Message<T>,
}

impl<T: Real> Messenger<T> {
    /// Fresh messenger on port 0 carrying (1, 0).
    pub fn new(line: Line) -> Self {
        Messenger {
            line,
            port: 0,
            message: Message::new(),
        }
    }

    /// Phase gate: rotates the message by `phi` only on path 1; path 0
    /// passes the identity.
    pub fn through_phase(mut self, phi: T) -> Self {
        if self.port == 1 {
            self.message = self.message.rotated(phi);
        }
        self
    }
}
