use std::collections::HashSet;

use rayon::prelude::*;

use crate::complex::{links_pass_mask, Colouring, State, StateRule};
use crate::polytope::Polytope;

/// Exhaustive search is limited to this many facets.
pub const MAX_EXHAUSTIVE_FACETS: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SearchError {
    #[error("{0} facets: exhaustive search needs at most 24, pass explicit candidates")]
    TooManyFacets(usize),
    #[error("{0} facets: state masks support at most 64")]
    MaskTooWide(usize),
    #[error("symmetry {0} is not a permutation of the facets")]
    BadSymmetry(usize),
    #[error(transparent)]
    Complex(#[from] crate::complex::ComplexError),
}

#[derive(Clone, Debug, Default)]
pub struct SearchOptions {
    /// O-masks to test instead of all `2^{n_facets}` states.
    pub candidates: Option<Vec<u64>>,
    /// Facet permutations generating a symmetry group; results keep one state per orbit.
    pub symmetries: Vec<Vec<usize>>,
}

fn permute(mask: u64, perm: &[usize]) -> u64 {
    let mut out = 0;
    let mut m = mask;
    while m != 0 {
        let i = m.trailing_zeros() as usize;
        out |= 1 << perm[i];
        m &= m - 1;
    }
    out
}

fn is_orbit_min(mask: u64, gens: &[Vec<usize>]) -> bool {
    let mut seen = HashSet::from([mask]);
    let mut stack = vec![mask];
    while let Some(m) = stack.pop() {
        for g in gens {
            let image = permute(m, g);
            if image < mask {
                return false;
            }
            if seen.insert(image) {
                stack.push(image);
            }
        }
    }
    true
}

/// States `s_0` whose ascending and descending links are nonempty and connected
/// at all `2^c` vertices, in increasing O-mask order.
pub fn search_states(
    p: &Polytope,
    col: &Colouring,
    rule: &StateRule,
    options: &SearchOptions,
) -> Result<Vec<State>, SearchError> {
    let nf = p.facet_count();
    if nf > 64 {
        return Err(SearchError::MaskTooWide(nf));
    }
    if options.candidates.is_none() && nf > MAX_EXHAUSTIVE_FACETS {
        return Err(SearchError::TooManyFacets(nf));
    }
    rule.validate(col.colours())?;
    for (k, g) in options.symmetries.iter().enumerate() {
        let mut sorted = g.clone();
        sorted.sort_unstable();
        if sorted != (0..nf).collect::<Vec<_>>() {
            return Err(SearchError::BadSymmetry(k));
        }
    }
    let full = if nf == 64 { u64::MAX } else { (1u64 << nf) - 1 };
    let mut neighbours = vec![0u64; nf];
    for &(f, g) in p.codim2_faces() {
        neighbours[f] |= 1 << g;
        neighbours[g] |= 1 << f;
    }
    let colour_masks: Vec<u32> = (0..nf).map(|f| rule.swap_mask(col.colour(f))).collect();
    let swap: Vec<u64> = (0..1u32 << col.colours())
        .map(|v| {
            (0..nf).filter(|&f| (v & colour_masks[f]).count_ones() % 2 == 1).fold(0, |m, f| m | 1 << f)
        })
        .collect();
    let keep = |&mask: &u64| {
        links_pass_mask(&neighbours, full, mask, &swap)
            && (options.symmetries.is_empty() || is_orbit_min(mask, &options.symmetries))
    };
    let mut masks: Vec<u64> = match &options.candidates {
        Some(c) => c.par_iter().copied().filter(|m| keep(m)).collect(),
        None => (0..=full).into_par_iter().filter(|m| keep(m)).collect(),
    };
    masks.sort_unstable();
    masks.dedup();
    Ok(masks.into_iter().map(|m| State::from_mask(m, nf)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::Letter;
    use crate::polytope::builtin_octahedron;

    fn octahedron_search(options: &SearchOptions) -> Vec<State> {
        let p = builtin_octahedron();
        let col = Colouring::two_colouring(&p).unwrap();
        search_states(&p, &col, &StateRule::Independent, options).unwrap()
    }

    #[test]
    fn octahedron_has_passing_states() {
        let found = octahedron_search(&SearchOptions::default());
        assert_eq!(found.len(), 24);
        assert!(found.iter().all(|s| s.count(Letter::O) > 0 && s.count(Letter::I) > 0));
    }

    #[test]
    fn all_out_excluded() {
        let options = SearchOptions { candidates: Some(vec![0xff, 0x00]), ..Default::default() };
        assert!(octahedron_search(&options).is_empty());
    }

    #[test]
    fn swap_invariance() {
        let found = octahedron_search(&SearchOptions::default());
        let set: HashSet<u64> = found.iter().map(State::mask).collect();
        assert!(set.iter().all(|m| set.contains(&(!m & 0xff))));
    }

    #[test]
    fn symmetry_dedup_keeps_orbit_representatives() {
        // the global letter swap is not a facet permutation; use the antipodal map f ↦ 7 − f
        let antipodal: Vec<usize> = (0..8).map(|f| 7 - f).collect();
        let all = octahedron_search(&SearchOptions::default());
        let reduced = octahedron_search(&SearchOptions { symmetries: vec![antipodal.clone()], ..Default::default() });
        assert!(reduced.len() < all.len());
        let orbits: HashSet<u64> =
            all.iter().map(|s| s.mask().min(permute(s.mask(), &antipodal))).collect();
        assert_eq!(reduced.len(), orbits.len());
    }
}
