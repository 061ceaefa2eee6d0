//! Depth-first search over sets of places with a parahoric case at each,
//! pruned by the covolume ceiling.

use rug::{Integer, Rational};
use serde::Serialize;

use super::Assignment;
use crate::fields::{Place, SplittingType};
use crate::parahoric::{e_prime, ParahoricCase};
use crate::rational::numerator_is_power_of_2;

/// The cases allowed at one place.
#[derive(Clone, Debug)]
pub struct PlaceOption {
    pub place: Place,
    pub split: SplittingType,
    pub cases: Vec<ParahoricCase>,
}

impl PlaceOption {
    pub fn min_factor(&self) -> Integer {
        self.cases.iter().map(|c| e_prime(*c, self.place.q)).min().expect("nonempty case list")
    }
}

/// A set of assignments with `R prod e'` within the ceiling and a power of 2
/// as numerator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Survivor {
    pub assignments: Vec<Assignment>,
    #[serde(serialize_with = "crate::report::ser_rational")]
    pub value: Rational,
}

#[derive(Clone, Debug, Default)]
pub struct SearchOutcome {
    pub survivors: Vec<Survivor>,
    pub nodes: u64,
}

struct Ctx<'a, C, A> {
    options: Vec<(PlaceOption, Integer)>,
    /// `suffix_min[i]`: least `min_factor` among options `i..`.
    suffix_min: Vec<Option<Integer>>,
    ceiling: &'a C,
    accept: &'a A,
    out: SearchOutcome,
}

/// Enumerates every subset of `options` (at most one case per place) whose
/// value `r prod e'` satisfies `value <= ceiling(#set)`, has a power-of-2
/// numerator and passes `accept`.
///
/// A branch is cut when its value already exceeds the ceiling and every
/// remaining place multiplies the value by more than the ceiling grows per
/// place (`growth`), so no extension can come back under it.
pub fn search<C, A>(r: &Rational, options: Vec<PlaceOption>, growth: u32, ceiling: &C, accept: &A) -> SearchOutcome
where
    C: Fn(usize) -> Rational,
    A: Fn(&[Assignment]) -> bool,
{
    let mut options: Vec<(PlaceOption, Integer)> = options
        .into_iter()
        .filter(|o| !o.cases.is_empty())
        .map(|o| {
            let m = o.min_factor();
            (o, m)
        })
        .collect();
    options.sort_by(|a, b| a.1.cmp(&b.1).then(a.0.place.cmp(&b.0.place)));
    let mut suffix_min: Vec<Option<Integer>> = vec![None; options.len() + 1];
    for i in (0..options.len()).rev() {
        let here = options[i].1.clone();
        suffix_min[i] = Some(match &suffix_min[i + 1] {
            Some(m) if *m < here => m.clone(),
            _ => here,
        });
    }
    let mut ctx = Ctx { options, suffix_min, ceiling, accept, out: SearchOutcome::default() };
    let mut chosen = Vec::new();
    dfs(&mut ctx, 0, r.clone(), &mut chosen, growth);
    ctx.out
}

fn dfs<C, A>(ctx: &mut Ctx<'_, C, A>, i: usize, value: Rational, chosen: &mut Vec<Assignment>, growth: u32)
where
    C: Fn(usize) -> Rational,
    A: Fn(&[Assignment]) -> bool,
{
    ctx.out.nodes += 1;
    let size = chosen.len();
    let over = value > (ctx.ceiling)(size);
    if i == ctx.options.len() {
        if size > 0 && !over && numerator_is_power_of_2(&value) && (ctx.accept)(chosen) {
            ctx.out.survivors.push(Survivor { assignments: chosen.clone(), value });
        }
        return;
    }
    if over && ctx.suffix_min[i].as_ref().is_some_and(|m| *m > growth) {
        return;
    }
    // Cheapest possible extension already over: only the current set remains.
    let cheapest = Rational::from(&value * ctx.suffix_min[i].as_ref().expect("i < len"));
    if cheapest > (ctx.ceiling)(size + 1) && ctx.suffix_min[i].as_ref().is_some_and(|m| *m > growth) {
        let n = ctx.options.len();
        dfs(ctx, n, value, chosen, growth);
        return;
    }
    dfs(ctx, i + 1, value.clone(), chosen, growth);
    let (opt, _) = ctx.options[i].clone();
    for case in &opt.cases {
        let e = e_prime(*case, opt.place.q);
        chosen.push(Assignment { place: opt.place, split: opt.split, case: *case });
        dfs(ctx, i + 1, Rational::from(&value * &e), chosen, growth);
        chosen.pop();
    }
}
