//! Exact reference statistics: the 4x4 complex gate chain for the
//! ancilla-controlled interferometer and the closed-form probabilities the
//! event-based counts are validated against.

use num_complex::Complex;

use crate::real::Real;

/// Joint output amplitudes of the two-line circuit for input |00>, indexed
/// |vu> at 2v + u (v = photon port, u = ancilla port).
#[derive(Clone, Copy, Debug)]
pub struct Amplitudes<T> {
    pub b: [Complex<T>; 4],
}

impl<T: Real> Amplitudes<T> {
    pub fn prob(&self, v: usize, u: usize) -> T {
        self.b[2 * v + u].norm_sqr()
    }

    pub fn probs(&self) -> JointProbs<T> {
        JointProbs {
            p: [
                [self.prob(0, 0), self.prob(0, 1)],
                [self.prob(1, 0), self.prob(1, 1)],
            ],
        }
    }
}

/// Joint probabilities `p[v][u]`; entries non-negative, summing to one.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct JointProbs<T> {
    pub p: [[T; 2]; 2],
}

impl<T: Real> JointProbs<T> {
    pub fn total(&self) -> T {
        self.p[0][0] + self.p[0][1] + self.p[1][0] + self.p[1][1]
    }
}

fn matvec<T: Real>(m: &[[Complex<T>; 4]; 4], v: &[Complex<T>; 4]) -> [Complex<T>; 4] {
    let mut out = [Complex::new(T::zero(), T::zero()); 4];
    for (row, slot) in m.iter().zip(out.iter_mut()) {
        *slot = row[0] * v[0] + row[1] * v[1] + row[2] * v[2] + row[3] * v[3];
    }
    out
}

/// Output amplitudes of the full circuit for input |00>.
///
/// Applied right to left: Hadamard on the ancilla, ancilla phase gate,
/// Hadamard on the ancilla, Hadamard on the photon, photon phase gate,
/// ancilla-controlled Hadamard on the photon. The Hadamard here is the
/// rotation form (rows (1, 1) and (-1, 1) over sqrt(2)), the same mixing
/// the event-based units implement; a pair of them closes an
/// interferometer whose path-1 phase pi + delta sends probability
/// sin^2(delta / 2) to port 1. The phase gates therefore run at pi + 2 alpha
/// (ancilla leaves port 1 with probability sin^2 alpha) and pi + phi
/// (photon port rates cos^2(phi/2), sin^2(phi/2) in the closed sector),
/// matching [`probs_closed_form`] and the simulation's conventions.
pub fn amplitudes<T: Real>(alpha: T, phi: T) -> Amplitudes<T> {
    let zero = Complex::new(T::zero(), T::zero());
    let one = Complex::new(T::one(), T::zero());
    let a = Complex::new(T::FRAC_1_SQRT_2(), T::zero());
    let na = -a;
    let phase_anc = Complex::from_polar(T::one(), T::PI() + alpha + alpha);
    let phase_pho = Complex::from_polar(T::one(), T::PI() + phi);

    // Hadamard on the ancilla: mixes u within each photon block.
    let h_ancilla = [
        [a, a, zero, zero],
        [na, a, zero, zero],
        [zero, zero, a, a],
        [zero, zero, na, a],
    ];
    // Phase on the ancilla |1> component (photon still on |0>).
    let p_ancilla = [
        [one, zero, zero, zero],
        [zero, phase_anc, zero, zero],
        [zero, zero, one, zero],
        [zero, zero, zero, one],
    ];
    // Hadamard on the photon: mixes v within each ancilla block.
    let h_photon = [
        [a, zero, a, zero],
        [zero, a, zero, a],
        [na, zero, a, zero],
        [zero, na, zero, a],
    ];
    // Phase on the photon path-1 component of the closed (u = 1) sector.
    let p_photon = [
        [one, zero, zero, zero],
        [zero, one, zero, zero],
        [zero, zero, one, zero],
        [zero, zero, zero, phase_pho],
    ];
    // Controlled Hadamard: identity on the u = 0 block, Hadamard on u = 1.
    let controlled_h = [
        [one, zero, zero, zero],
        [zero, a, zero, a],
        [zero, zero, one, zero],
        [zero, na, zero, a],
    ];

    let mut state = [one, zero, zero, zero];
    for stage in [&h_ancilla, &p_ancilla, &h_ancilla, &h_photon, &p_photon, &controlled_h] {
        state = matvec(stage, &state);
    }
    Amplitudes { b: state }
}

/// Closed-form joint probabilities:
/// p(0,0) = p(1,0) = cos^2(alpha) / 2,
/// p(0,1) = sin^2(alpha) cos^2(phi/2),
/// p(1,1) = sin^2(alpha) sin^2(phi/2).
pub fn probs_closed_form<T: Real>(alpha: T, phi: T) -> JointProbs<T> {
    let two = T::one() + T::one();
    let ca = alpha.cos();
    let sa = alpha.sin();
    let open = ca * ca / two;
    let ch = (phi / two).cos();
    let sh = (phi / two).sin();
    JointProbs {
        p: [
            [open, sa * sa * ch * ch],
            [open, sa * sa * sh * sh],
        ],
    }
}

/// Path probabilities of the bare two-path interferometer:
/// ((1 + cos(phi0 - phi1)) / 2, (1 - cos(phi0 - phi1)) / 2).
pub fn mzi_prob<T: Real>(phi0: T, phi1: T) -> (T, T) {
    let two = T::one() + T::one();
    let c = (phi0 - phi1).cos();
    ((T::one() + c) / two, (T::one() - c) / two)
}
