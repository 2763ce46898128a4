use crate::dispersion::Branch;

/// Error type shared by every fallible operation in the crate.
///
/// Float payloads are carried as `f64` so the enum stays non-generic; callers
/// working in `f32` lose nothing since the values are diagnostic only.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// `w * d` exceeds 1: `sin(omega d) = w d` has no real solution.
    #[error("Nyquist bound violated: w*d = {wd} exceeds 1, no real mode frequency exists")]
    NyquistViolation { wd: f64 },

    /// The doubled branch index has the wrong parity for the requested branch.
    #[error("parity mismatch: twos = {twos} is not valid for the {branch:?} branch")]
    ParityError { branch: Branch, twos: i64 },

    /// `w * d` sits at (or within scan resolution of) the tangency at 1,
    /// where each root pair coincides and sign-change scanning is unsound.
    #[error("degenerate tangency: w*d = {wd} leaves no resolvable gap between paired roots")]
    DegenerateRoot { wd: f64 },

    /// The two-mode basis is too close to the tangency for a stable fit.
    #[error("degenerate mode basis: w*d = {wd} is within 1e-8 of the tangency at 1")]
    DegenerateBasis { wd: f64 },

    /// Both fitted amplitudes vanish, so no fraction of either mode exists.
    #[error("both mode amplitudes are zero")]
    ZeroSolution,

    /// Grid index outside the stored sample range.
    #[error("grid index {n} outside stored range [{first}, {last}]")]
    IndexError { n: i64, first: i64, last: i64 },

    /// Inputs that must agree (same w, d, branch pairing, ...) do not.
    #[error("mismatched inputs: {0}")]
    MismatchError(String),

    /// A scalar argument is outside its documented domain.
    #[error("domain error: {0}")]
    Domain(String),
}

pub type Result<T> = std::result::Result<T, Error>;
