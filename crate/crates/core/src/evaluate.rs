//! Sugeno-integral utility of acts.
//!
//! Three formulations are provided and must agree on every act: the level-cut
//! form `max_λ min(λ, σ(F_λ))`, the same maximum indexed by outcomes, and the
//! median of the utilities and the level-set capacities. Possibilistic
//! utilities and a plain expected utility (the only real-valued computation in
//! the crate) live here too.

use crate::acts::{Act, DecisionFrame};
use crate::error::{Error, Result};
use crate::event::Event;
use crate::scale::{median3, median_unchecked, Level};

/// `u_S(f) = max_{λ in L} min(λ, σ(F_λ))`.
pub fn sugeno_levelcut(frame: &DecisionFrame, f: &Act) -> Result<Level> {
    frame.check_act(f)?;
    Ok(levelcut(frame, f))
}

pub(crate) fn levelcut(frame: &DecisionFrame, f: &Act) -> Level {
    let sigma = frame.capacity();
    frame
        .scale()
        .levels()
        .map(|l| l.min(sigma.get(frame.level_set_unchecked(f, l))))
        .max()
        .unwrap_or(Level::BOTTOM)
}

/// `u_S(f) = max_{x in X} min(mu(x), σ(F_x))` with `F_x = {s : mu(f(s)) >= mu(x)}`.
pub fn sugeno_outcome(frame: &DecisionFrame, f: &Act) -> Result<Level> {
    frame.check_act(f)?;
    let sigma = frame.capacity();
    Ok(frame
        .mu()
        .iter()
        .map(|&ux| ux.min(sigma.get(frame.level_set_unchecked(f, ux))))
        .max()
        .unwrap_or(Level::BOTTOM))
}

/// Median of the `2n + 1` values `{σ(F_{x_i}) : 1 <= i <= n} ∪ {mu(x_i) : 0 <= i <= n}`
/// where outcomes are sorted by utility (ties by index). Duplicates count
/// with multiplicity.
pub fn sugeno_median(frame: &DecisionFrame, f: &Act) -> Result<Level> {
    frame.check_act(f)?;
    let sigma = frame.capacity();
    let mut order: Vec<usize> = (0..frame.outcomes()).collect();
    order.sort_by_key(|&x| (frame.utility(x), x));
    let mut values: Vec<Level> = order.iter().map(|&x| frame.utility(x)).collect();
    values.extend(
        order
            .iter()
            .skip(1)
            .map(|&x| sigma.get(frame.level_set_unchecked(f, frame.utility(x)))),
    );
    Ok(median_unchecked(&values))
}

/// Utility of `xAy` in closed form: `max(mu(y), min(mu(x), σ(A)))` when
/// `mu(x) >= mu(y)`; otherwise the act is rewritten as `yĀx` first.
pub fn binary_act_value(frame: &DecisionFrame, x: usize, event: Event, y: usize) -> Result<Level> {
    let space = frame.space();
    space.check_outcome(x)?;
    space.check_outcome(y)?;
    let (x, event, y) = if frame.utility(x) >= frame.utility(y) {
        (x, event, y)
    } else {
        (y, event.complement(frame.states()), x)
    };
    frame.binary_act(x, event, y)?;
    let sigma = frame.capacity().get(event);
    Ok(frame.utility(y).max(frame.utility(x).min(sigma)))
}

/// The same closed form written as `median{mu(y), mu(x), σ(A)}`.
pub fn binary_act_median(frame: &DecisionFrame, x: usize, event: Event, y: usize) -> Result<Level> {
    let (x, event, y) = if frame.utility(x) >= frame.utility(y) {
        (x, event, y)
    } else {
        (y, event.complement(frame.states()), x)
    };
    frame.binary_act(x, event, y)?;
    Ok(median3(
        frame.utility(y),
        frame.utility(x),
        frame.capacity().get(event),
    ))
}

/// Optimistic possibilistic utility `QU*(f) = max_s min(π(s), mu(f(s)))`.
pub fn qu_optimistic(frame: &DecisionFrame, f: &Act) -> Result<Level> {
    frame.check_act(f)?;
    let pi = frame.possibility().ok_or(Error::NoPossibility)?;
    Ok(f.outcomes()
        .iter()
        .enumerate()
        .map(|(s, &x)| pi.get(s).min(frame.utility(x)))
        .max()
        .unwrap_or(Level::BOTTOM))
}

/// Pessimistic possibilistic utility `QU_*(f) = min_s max(n(π(s)), mu(f(s)))`.
pub fn qu_pessimistic(frame: &DecisionFrame, f: &Act) -> Result<Level> {
    frame.check_act(f)?;
    let pi = frame.possibility().ok_or(Error::NoPossibility)?;
    let scale = frame.scale();
    Ok(f.outcomes()
        .iter()
        .enumerate()
        .map(|(s, &x)| scale.rev(pi.get(s)).max(frame.utility(x)))
        .min()
        .unwrap_or(scale.top()))
}

const PROBABILITY_TOLERANCE: f64 = 1e-9;

/// `sum_s p(s) * payoff(s)`.
pub fn expected_utility(probabilities: &[f64], payoffs: &[f64]) -> Result<f64> {
    check_probabilities(probabilities)?;
    if probabilities.len() != payoffs.len() {
        return Err(Error::LengthMismatch {
            probabilities: probabilities.len(),
            payoffs: payoffs.len(),
        });
    }
    Ok(probabilities.iter().zip(payoffs).map(|(p, v)| p * v).sum())
}

pub fn check_probabilities(probabilities: &[f64]) -> Result<()> {
    let sum: f64 = probabilities.iter().sum();
    if probabilities.iter().any(|p| !(p.is_finite() && *p >= 0.0))
        || (sum - 1.0).abs() > PROBABILITY_TOLERANCE
    {
        return Err(Error::InvalidDistribution { sum });
    }
    Ok(())
}
