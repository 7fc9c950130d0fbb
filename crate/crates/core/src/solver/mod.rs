//! Welfare-maximizing (maximal) lotteries.
//!
//! For a skew-symmetric aggregate `M`, the welfare-maximizing lotteries are
//! the optimal strategies of the symmetric zero-sum game `M`:
//!
//! ```text
//! { p : p >= 0, sum p = 1, (p^T M)_y >= 0 for every y }
//! ```
//!
//! This set is a non-empty polytope (the game value is zero). Everything
//! here is computed with the exact simplex in [`simplex`].

pub mod simplex;

use crate::algebra::{Alternative, Lottery, Scalar, SsbMatrix};
use crate::error::{Error, Result};
use simplex::{LinearProgram, LpSolution, Relation};

/// Exact description of the maximal set of one matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MaximalAnalysis<T> {
    /// Some welfare-maximizing lottery (a vertex of the maximal polytope).
    pub witness: Lottery<T>,
    /// The lexicographically largest welfare-maximizing lottery.
    pub lex_choice: Lottery<T>,
    pub unique: bool,
    /// `(min, max)` probability of each alternative over the maximal set.
    pub ranges: Vec<(T, T)>,
}

/// `p` is welfare-maximizing iff `phi(p, e_y) >= 0` for every alternative `y`.
pub fn is_welfare_maximizing<T: Scalar>(m: &SsbMatrix<T>, p: &Lottery<T>) -> Result<bool> {
    Ok(worst_column(m, p)?.is_none())
}

/// The last alternative `y` minimizing `phi(p, e_y)`, when that value is negative.
pub fn worst_column<T: Scalar>(
    m: &SsbMatrix<T>,
    p: &Lottery<T>,
) -> Result<Option<(Alternative, T)>> {
    let columns = m.column_values(p)?;
    let mut worst: Option<(Alternative, T)> = None;
    for (y, v) in columns.into_iter().enumerate() {
        if v.is_negative() && worst.as_ref().is_none_or(|(_, w)| v <= *w) {
            worst = Some((Alternative(y), v));
        }
    }
    Ok(worst)
}

fn polytope<T: Scalar>(m: &SsbMatrix<T>, fixed: &[T]) -> LinearProgram<T> {
    let n = m.size();
    let mut lp = LinearProgram::new(n);
    lp.constrain(vec![T::one(); n], Relation::Equal, T::one());
    for y in 0..n {
        let column = (0..n).map(|x| m.entry(x, y).clone()).collect();
        lp.constrain(column, Relation::GreaterEq, T::zero());
    }
    for (x, value) in fixed.iter().enumerate() {
        let mut unit = vec![T::zero(); n];
        unit[x] = T::one();
        lp.constrain(unit, Relation::Equal, value.clone());
    }
    lp
}

fn optimum<T: Scalar>(lp: LinearProgram<T>) -> Result<(Vec<T>, T)> {
    match lp.solve() {
        LpSolution::Optimal { point, value } => Ok((point, value)),
        // feasibility is the minimax theorem; boundedness is the simplex
        LpSolution::Infeasible | LpSolution::Unbounded => Err(Error::Infeasible),
    }
}

/// A basic feasible point of the maximal polytope.
pub fn maximal_witness<T: Scalar>(m: &SsbMatrix<T>) -> Result<Lottery<T>> {
    let (point, _) = optimum(polytope(m, &[]))?;
    let lottery = Lottery::new(point)?;
    debug_assert!(is_welfare_maximizing(m, &lottery)?);
    Ok(lottery)
}

/// Lexicographic maximum of `(p(a_1), p(a_2), ...)` over the maximal polytope,
/// one LP per coordinate with earlier coordinates pinned.
pub fn lex_maximal<T: Scalar>(m: &SsbMatrix<T>) -> Result<Lottery<T>> {
    let n = m.size();
    let mut fixed: Vec<T> = Vec::with_capacity(n);
    let mut mass = T::zero();
    while fixed.len() < n {
        if mass.is_one() {
            fixed.resize(n, T::zero());
            break;
        }
        let x = fixed.len();
        let mut objective = vec![T::zero(); n];
        objective[x] = T::one();
        let (_, value) = optimum(polytope(m, &fixed).maximize(objective))?;
        mass = mass + value.clone();
        fixed.push(value);
    }
    let lottery = Lottery::new(fixed)?;
    debug_assert!(is_welfare_maximizing(m, &lottery)?);
    Ok(lottery)
}

/// Per-coordinate probability ranges over the maximal polytope (`2n` LPs).
pub fn uniqueness_analysis<T: Scalar>(m: &SsbMatrix<T>) -> Result<MaximalAnalysis<T>> {
    let n = m.size();
    let mut ranges = Vec::with_capacity(n);
    for x in 0..n {
        let mut up = vec![T::zero(); n];
        up[x] = T::one();
        let down = up.iter().map(|v| -v.clone()).collect();
        let (_, max) = optimum(polytope(m, &[]).maximize(up))?;
        let (_, neg_min) = optimum(polytope(m, &[]).maximize(down))?;
        ranges.push((-neg_min, max));
    }
    let unique = ranges.iter().all(|(lo, hi)| lo == hi);
    let witness = maximal_witness(m)?;
    let lex_choice = lex_maximal(m)?;
    debug_assert!(!unique || witness == lex_choice);
    Ok(MaximalAnalysis {
        witness,
        lex_choice,
        unique,
        ranges,
    })
}

/// The alternative beating every other one, if any.
pub fn condorcet_winner<T: Scalar>(m: &SsbMatrix<T>) -> Option<Alternative> {
    let n = m.size();
    (0..n)
        .find(|&x| (0..n).all(|y| y == x || m.entry(x, y).is_positive()))
        .map(Alternative)
}

/// Value of the symmetric game `max_p min_y (p^T M)_y`. Zero for every
/// skew-symmetric `M`.
pub fn game_value<T: Scalar>(m: &SsbMatrix<T>) -> Result<T> {
    // variables: p_0..p_{n-1}, v+, v-
    let n = m.size();
    let mut objective = vec![T::zero(); n + 2];
    objective[n] = T::one();
    objective[n + 1] = -T::one();
    let mut lp = LinearProgram::new(n + 2).maximize(objective);
    let mut simplex_row = vec![T::one(); n];
    simplex_row.extend([T::zero(), T::zero()]);
    lp.constrain(simplex_row, Relation::Equal, T::one());
    for y in 0..n {
        let mut row: Vec<T> = (0..n).map(|x| m.entry(x, y).clone()).collect();
        row.push(-T::one());
        row.push(T::one());
        lp.constrain(row, Relation::GreaterEq, T::zero());
    }
    optimum(lp).map(|(_, value)| value)
}

/// Outcome of checking the degenerate-uniqueness characterization on one matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lemma1Check {
    /// Alternative whose degenerate lottery is the unique maximal lottery.
    pub unique_degenerate: Option<Alternative>,
    /// Alternative with a strictly positive row.
    pub strict_row: Option<Alternative>,
}

impl Lemma1Check {
    pub fn holds(&self) -> bool {
        self.unique_degenerate == self.strict_row
    }
}

/// Checks, for every `x`, that `e_x` is the unique maximal lottery iff
/// `phi(x, y) > 0` for all `y != x`.
pub fn verify_lemma1<T: Scalar>(phi: &SsbMatrix<T>) -> Result<Lemma1Check> {
    let analysis = uniqueness_analysis(phi)?;
    let unique_degenerate = if analysis.unique {
        analysis.lex_choice.degenerate_on()
    } else {
        None
    };
    Ok(Lemma1Check {
        unique_degenerate,
        strict_row: condorcet_winner(phi),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{AlternativeSet, Profile, WeakOrder};
    use crate::Rational;

    fn q(n: i64, d: i64) -> Rational {
        Rational::ratio(n, d)
    }

    fn profile(alts: usize, orders: &[(u64, &[usize])]) -> Profile {
        Profile::from_orders(
            AlternativeSet::standard(alts),
            orders
                .iter()
                .map(|(c, r)| (*c, WeakOrder::strict(r).unwrap())),
        )
        .unwrap()
    }

    fn p_cyc() -> SsbMatrix {
        profile(3, &[(1, &[0, 1, 2]), (1, &[1, 2, 0]), (1, &[2, 0, 1])]).aggregate()
    }

    fn p_cw() -> SsbMatrix {
        profile(3, &[(2, &[0, 1, 2]), (1, &[1, 2, 0])]).aggregate()
    }

    #[test]
    fn welfare_maximization_checks() {
        let zero = SsbMatrix::<Rational>::zero(3);
        assert!(is_welfare_maximizing(&zero, &Lottery::uniform(3)).unwrap());
        assert!(is_welfare_maximizing(&p_cyc(), &Lottery::uniform(3)).unwrap());
        let ea = Lottery::degenerate(3, Alternative(0));
        assert!(!is_welfare_maximizing(&p_cyc(), &ea).unwrap());
        assert_eq!(
            worst_column(&p_cyc(), &ea).unwrap(),
            Some((Alternative(2), q(-1, 1)))
        );
        assert!(is_welfare_maximizing(&p_cyc(), &Lottery::uniform(2)).is_err());
    }

    #[test]
    fn witness_examples() {
        let zero = SsbMatrix::<Rational>::zero(3);
        assert_eq!(maximal_witness(&zero).unwrap(), Lottery::degenerate(3, Alternative(0)));
        assert_eq!(maximal_witness(&p_cyc()).unwrap(), Lottery::uniform(3));
        assert_eq!(maximal_witness(&p_cw()).unwrap(), Lottery::degenerate(3, Alternative(0)));
    }

    #[test]
    fn lex_examples() {
        let zero = SsbMatrix::<Rational>::zero(3);
        assert_eq!(lex_maximal(&zero).unwrap(), Lottery::degenerate(3, Alternative(0)));
        assert_eq!(lex_maximal(&p_cyc()).unwrap(), Lottery::uniform(3));
        assert_eq!(lex_maximal(&p_cw()).unwrap(), Lottery::degenerate(3, Alternative(0)));
    }

    #[test]
    fn uniqueness_examples() {
        let zero = uniqueness_analysis(&SsbMatrix::<Rational>::zero(2)).unwrap();
        assert!(!zero.unique);
        assert_eq!(zero.ranges, vec![(q(0, 1), q(1, 1)); 2]);

        let cyc = uniqueness_analysis(&p_cyc()).unwrap();
        assert!(cyc.unique);
        assert_eq!(cyc.ranges, vec![(q(1, 3), q(1, 3)); 3]);

        let cw = uniqueness_analysis(&p_cw()).unwrap();
        assert!(cw.unique);
        assert_eq!(
            cw.ranges,
            vec![(q(1, 1), q(1, 1)), (q(0, 1), q(0, 1)), (q(0, 1), q(0, 1))]
        );
    }

    #[test]
    fn condorcet_examples() {
        assert_eq!(condorcet_winner(&p_cw()), Some(Alternative(0)));
        assert_eq!(condorcet_winner(&p_cyc()), None);
        let single = profile(3, &[(1, &[0, 1, 2])]).aggregate();
        assert_eq!(condorcet_winner(&single), Some(Alternative(0)));
    }

    #[test]
    fn lemma1_examples() {
        let strict: SsbMatrix = SsbMatrix::canonical(&WeakOrder::strict(&[0, 1, 2]).unwrap());
        let check = verify_lemma1(&strict).unwrap();
        assert!(check.holds());
        assert_eq!(check.unique_degenerate, Some(Alternative(0)));

        let cyc = verify_lemma1(&p_cyc()).unwrap();
        assert!(cyc.holds());
        assert_eq!(cyc.strict_row, None);

        let zero = verify_lemma1(&SsbMatrix::<Rational>::zero(3)).unwrap();
        assert!(zero.holds());
        assert_eq!(zero.unique_degenerate, None);
    }

    #[test]
    fn game_value_is_zero() {
        assert_eq!(game_value(&p_cyc()).unwrap(), q(0, 1));
        assert_eq!(game_value(&p_cw()).unwrap(), q(0, 1));
        let star = uniqueness_analysis(&p_cyc()).unwrap().lex_choice;
        assert_eq!(p_cyc().value(&star, &star).unwrap(), q(0, 1));
    }

    #[test]
    fn weighted_cycle_equalizer() {
        // margins a>b by 1, b>c by 2, c>a by 3: equalizer is (2, 3, 1) / 6
        let m = SsbMatrix::new(vec![
            vec![q(0, 1), q(1, 1), q(-3, 1)],
            vec![q(-1, 1), q(0, 1), q(2, 1)],
            vec![q(3, 1), q(-2, 1), q(0, 1)],
        ])
        .unwrap();
        let expected = Lottery::new(vec![q(1, 3), q(1, 2), q(1, 6)]).unwrap();
        assert_eq!(lex_maximal(&m).unwrap(), expected);
        assert!(uniqueness_analysis(&m).unwrap().unique);
    }
}
