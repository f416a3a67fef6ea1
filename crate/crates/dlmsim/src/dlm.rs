//! Adaptive processing units: a deterministic learning machine input stage,
//! Hadamard-type transformation stages, and a stochastic output stage.
//!
//! Each unit stores six numbers — one register per input port holding the
//! last message seen there, plus a learned arrival-ratio pair — and routes
//! every messenger through exactly one output port. With the learning
//! parameter near one, the long-run output frequencies reproduce the
//! interference statistics of the matching wave calculation.

use crate::error::Error;
use crate::message::Message;
use crate::real::Real;
use crate::rng::RandomSource;

/// Branch norms below this emit the reference message (1, 0) instead of
/// dividing by ~0. Unreachable under the selection rule (a branch is picked
/// with probability equal to its squared norm) but blocks NaN propagation.
const DEGENERATE_BRANCH: f64 = 1e-12;

/// State of one deterministic learning machine.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DlmState<T> {
    /// `reg[k]` = last message received on port k.
    pub reg: [Message<T>; 2],
    /// Learned event-ratio pair; `x[0] + x[1] = 1`, both non-negative.
    pub x: [T; 2],
    /// Learning parameter in [0, 1). Zero echoes the last event; values
    /// near one track the long-run arrival ratio slowly and accurately.
    pub gamma: T,
}

impl<T: Real> DlmState<T> {
    /// Random initialization: x = (R, 1 - R) for a fresh uniform deviate R,
    /// and unit registers at independent uniform angles.
    pub fn init(gamma: T, rng: &mut RandomSource) -> Result<DlmState<T>, Error> {
        if !(gamma >= T::zero() && gamma < T::one()) {
            return Err(Error::GammaOutOfRange(gamma.to_f64()));
        }
        let r = rng.uniform::<T>();
        let theta0 = rng.uniform::<T>() * T::TAU();
        let theta1 = rng.uniform::<T>() * T::TAU();
        Ok(DlmState {
            reg: [Message::from_angle(theta0), Message::from_angle(theta1)],
            x: [r, T::one() - r],
            gamma,
        })
    }

    /// Input stage. Stores the message in register `port` and pulls the
    /// ratio pair toward the event vector e_port:
    /// `x_i <- gamma * x_i + (1 - gamma) * delta(i, port)`.
    pub fn update(&mut self, port: usize, message: Message<T>) {
        debug_assert!(port < 2);
        self.reg[port] = message;
        let keep = self.gamma;
        let gain = T::one() - keep;
        self.x[0] = keep * self.x[0] + if port == 0 { gain } else { T::zero() };
        self.x[1] = keep * self.x[1] + if port == 1 { gain } else { T::zero() };
    }

    /// Hadamard transformation stage:
    /// `V = (C1 r1 + C0 r0, S1 r1 + S0 r0, C1 r1 - C0 r0, S1 r1 - S0 r0) / sqrt(2)`
    /// with `r_k = sqrt(x_k)`. Viewing (V0 + i V1, V2 + i V3) as two complex
    /// amplitudes, this is the Hadamard matrix applied to
    /// `(r0 (C0 + i S0), r1 (C1 + i S1))`.
    pub fn hadamard_transform(&self) -> TransformVector<T> {
        let h = T::FRAC_1_SQRT_2();
        let r0 = self.x[0].sqrt();
        let r1 = self.x[1].sqrt();
        let (c0, s0) = (self.reg[0].c * r0, self.reg[0].s * r0);
        let (c1, s1) = (self.reg[1].c * r1, self.reg[1].s * r1);
        TransformVector([h * (c1 + c0), h * (s1 + s0), h * (c1 - c0), h * (s1 - s0)])
    }

    /// Controlled-Hadamard transformation stage: the Hadamard form when the
    /// control bit is 1, otherwise the weighted pass-through
    /// `V = (C0 r0, S0 r0, C1 r1, S1 r1)`. The input stage runs regardless
    /// of the control value, so the machine keeps learning while inactive.
    pub fn controlled_hadamard_transform(&self, control: usize) -> TransformVector<T> {
        debug_assert!(control < 2);
        if control == 1 {
            return self.hadamard_transform();
        }
        let r0 = self.x[0].sqrt();
        let r1 = self.x[1].sqrt();
        TransformVector([
            self.reg[0].c * r0,
            self.reg[0].s * r0,
            self.reg[1].c * r1,
            self.reg[1].s * r1,
        ])
    }

    /// One full event through the unit: input stage, transformation stage
    /// (controlled when a control bit is supplied), output stage. Returns
    /// the exit port and the outgoing message.
    pub fn process_event(
        &mut self,
        port: usize,
        message: Message<T>,
        control: Option<usize>,
        rng: &mut RandomSource,
    ) -> (usize, Message<T>) {
        self.update(port, message);
        let v = match control {
            Some(bit) => self.controlled_hadamard_transform(bit),
            None => self.hadamard_transform(),
        };
        v.select_output(rng)
    }
}

/// Four-component output of a transformation stage. Unit norm (within
/// 1e-10) whenever built from a valid state, for both stage forms.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TransformVector<T>(pub [T; 4]);

impl<T: Real> TransformVector<T> {
    pub fn norm(&self) -> T {
        let [v0, v1, v2, v3] = self.0;
        (v0 * v0 + v1 * v1 + v2 * v2 + v3 * v3).sqrt()
    }

    /// Squared weight of the port-0 branch, `V0^2 + V1^2`.
    pub fn port0_weight(&self) -> T {
        let [v0, v1, ..] = self.0;
        v0 * v0 + v1 * v1
    }

    /// Output stage. Routes to port 0 with probability `V0^2 + V1^2`
    /// (port 1 otherwise) and emits the selected pair normalized to a unit
    /// message.
    pub fn select_output(&self, rng: &mut RandomSource) -> (usize, Message<T>) {
        let [v0, v1, v2, v3] = self.0;
        let w0 = v0 * v0 + v1 * v1;
        let (port, c, s, w) = if rng.uniform::<T>() < w0 {
            (0, v0, v1, w0)
        } else {
            (1, v2, v3, v2 * v2 + v3 * v3)
        };
        let norm = w.sqrt();
        if norm < T::from_f64(DEGENERATE_BRANCH) {
            return (port, Message::new());
        }
        (port, Message { c: c / norm, s: s / norm })
    }
}
