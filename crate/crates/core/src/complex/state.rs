use std::fmt;

use super::colouring::strip_comment;
use super::{Colouring, ComplexError, Vertex};
use crate::polytope::Polytope;

/// Status of a facet: the dual edge points into (`I`) or out of (`O`) the vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    I,
    O,
}

impl Letter {
    pub fn flip(self) -> Self {
        match self {
            Letter::I => Letter::O,
            Letter::O => Letter::I,
        }
    }

    /// Level change along the dual edge, seen from the vertex carrying this letter.
    pub fn step(self) -> i32 {
        match self {
            Letter::O => 1,
            Letter::I => -1,
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Letter::I => "I",
            Letter::O => "O",
        })
    }
}

/// One letter per facet, indexed like the polytope's facets.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct State(pub Vec<Letter>);

impl State {
    pub fn from_mask(mask: u64, facets: usize) -> Self {
        Self((0..facets).map(|i| if mask >> i & 1 == 1 { Letter::O } else { Letter::I }).collect())
    }

    /// Bit `i` set iff facet `i` has letter O.
    pub fn mask(&self) -> u64 {
        self.0.iter().enumerate().filter(|(_, &l)| l == Letter::O).fold(0, |m, (i, _)| m | 1 << i)
    }

    pub fn letter(&self, i: usize) -> Letter {
        self.0[i]
    }

    pub fn swapped(&self) -> Self {
        Self(self.0.iter().map(|l| l.flip()).collect())
    }

    /// Compact `OOIO…` form.
    pub fn word(&self) -> String {
        self.0.iter().map(Letter::to_string).collect()
    }

    pub fn count(&self, letter: Letter) -> usize {
        self.0.iter().filter(|&&l| l == letter).count()
    }
}

/// How the state at `x_0` is transported to the other vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StateRule {
    /// Crossing a facet of colour `i` swaps the letters of colour `i`.
    Independent,
    /// Colours are matched in pairs; crossing colour `i` swaps the letters of `i` and its partner.
    Paired(Vec<(usize, usize)>),
}

impl StateRule {
    /// Checks that a pairing is a perfect matching of `0..c`.
    pub fn validate(&self, colours: usize) -> Result<(), ComplexError> {
        let StateRule::Paired(pairs) = self else {
            return Ok(());
        };
        if colours % 2 == 1 {
            return Err(ComplexError::OddPairing(colours));
        }
        let mut seen = vec![false; colours];
        for &(a, b) in pairs {
            if a == b || a >= colours || b >= colours || seen[a] || seen[b] {
                return Err(ComplexError::InvalidPairing(format!("pair ({}, {})", a + 1, b + 1)));
            }
            seen[a] = true;
            seen[b] = true;
        }
        if let Some(c) = seen.iter().position(|s| !s) {
            return Err(ComplexError::InvalidPairing(format!("colour {} is unpaired", c + 1)));
        }
        Ok(())
    }

    /// Colour mask whose letters swap when crossing a facet of colour `c`.
    pub fn swap_mask(&self, c: usize) -> Vertex {
        match self {
            StateRule::Independent => 1 << c,
            StateRule::Paired(pairs) => {
                let partner = pairs
                    .iter()
                    .find_map(|&(a, b)| if a == c { Some(b) } else if b == c { Some(a) } else { None })
                    .unwrap_or(c);
                (1 << c) | (1 << partner)
            }
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            StateRule::Independent => "independent",
            StateRule::Paired(_) => "paired",
        }
    }
}

/// A state file: rule, optional pairing, and the letters of `s_0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StateSpec {
    pub rule: StateRule,
    pub state: State,
}

impl StateSpec {
    /// Parses `rule independent|paired`, `pair a b`, and `facet_id I|O` lines.
    pub fn parse(text: &str, p: &Polytope) -> Result<Self, ComplexError> {
        let mut letters = vec![None; p.facet_count()];
        let mut rule = None;
        let mut pairs = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = strip_comment(line);
            if line.is_empty() {
                continue;
            }
            let err = |what: &str| ComplexError::Parse(format!("state line {}: {what}", lineno + 1));
            let parts: Vec<&str> = line.split_whitespace().collect();
            match parts.as_slice() {
                ["rule", "independent"] => rule = Some(false),
                ["rule", "paired"] => rule = Some(true),
                ["rule", other] => return Err(err(&format!("unknown rule `{other}`"))),
                ["pair", a, b] => {
                    let a: usize = a.parse().map_err(|_| err("bad colour"))?;
                    let b: usize = b.parse().map_err(|_| err("bad colour"))?;
                    if a == 0 || b == 0 {
                        return Err(err("colours start at 1"));
                    }
                    pairs.push((a - 1, b - 1));
                }
                [id, letter] => {
                    let id: u32 = id.parse().map_err(|_| err("bad facet id"))?;
                    let letter = match *letter {
                        "I" | "i" => Letter::I,
                        "O" | "o" => Letter::O,
                        _ => return Err(err("letter must be I or O")),
                    };
                    let i = p.facet_index(id).ok_or(ComplexError::UnknownFacet(id))?;
                    if letters[i].replace(letter).is_some() {
                        return Err(err("facet listed twice"));
                    }
                }
                _ => return Err(err("unrecognised line")),
            }
        }
        let state = letters
            .into_iter()
            .enumerate()
            .map(|(i, l)| l.ok_or(ComplexError::MissingFacet(p.facet_id(i))))
            .collect::<Result<Vec<_>, _>>()?;
        let rule = match (rule, pairs.is_empty()) {
            (Some(true), _) => StateRule::Paired(pairs),
            (Some(false) | None, true) => StateRule::Independent,
            (_, false) => return Err(ComplexError::Parse("pairs given without `rule paired`".into())),
        };
        Ok(Self { rule, state: State(state) })
    }

    pub fn to_text(&self, p: &Polytope) -> String {
        let mut out = format!("rule {}\n", self.rule.name());
        if let StateRule::Paired(pairs) = &self.rule {
            for (a, b) in pairs {
                out.push_str(&format!("pair {} {}\n", a + 1, b + 1));
            }
        }
        for (i, l) in self.state.0.iter().enumerate() {
            out.push_str(&format!("{} {}\n", p.facet_id(i), l));
        }
        out
    }
}

/// States `s_v` for every `v ∈ (ℤ/2)^c`, indexed by the bitmask of `v`.
///
/// Facet `F` has its letter swapped in `s_v` iff `v` has odd weight on the
/// swap mask of `colour(F)`; the stepwise rule is re-checked along every
/// hypercube edge.
pub fn propagate_states(s0: &State, rule: &StateRule, col: &Colouring) -> Result<Vec<State>, ComplexError> {
    let c = col.colours();
    rule.validate(c)?;
    if c > super::MAX_COLOURS {
        return Err(ComplexError::TooManyColours(c));
    }
    let masks: Vec<Vertex> = (0..s0.0.len()).map(|f| rule.swap_mask(col.colour(f))).collect();
    let states: Vec<State> = (0..1u32 << c)
        .map(|v| {
            State(
                s0.0.iter()
                    .zip(&masks)
                    .map(|(&l, &m)| if (v & m).count_ones() % 2 == 1 { l.flip() } else { l })
                    .collect(),
            )
        })
        .collect();
    for v in 0..1u32 << c {
        for i in 0..c {
            let w = v ^ (1 << i);
            let swap = rule.swap_mask(i);
            for (f, (&lv, &lw)) in states[v as usize].0.iter().zip(&states[w as usize].0).enumerate() {
                let expect = if swap >> col.colour(f) & 1 == 1 { lv.flip() } else { lv };
                if expect != lw {
                    return Err(ComplexError::IllDefinedState { vertex: v, colour: i + 1 });
                }
            }
        }
    }
    Ok(states)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::builtin_octahedron;

    fn checkerboard() -> Colouring {
        Colouring::two_colouring(&builtin_octahedron()).unwrap()
    }

    #[test]
    fn independent_origin_is_s0() {
        let col = checkerboard();
        let s0 = State::from_mask(0b1011_0010, 8);
        let states = propagate_states(&s0, &StateRule::Independent, &col).unwrap();
        assert_eq!(states.len(), 4);
        assert_eq!(states[0], s0);
    }

    #[test]
    fn independent_flips_one_colour_class() {
        let col = checkerboard();
        let s0 = State::from_mask(0b1011_0010, 8);
        let states = propagate_states(&s0, &StateRule::Independent, &col).unwrap();
        let e1 = &states[0b01];
        let flipped: Vec<usize> = (0..8).filter(|&f| e1.letter(f) != s0.letter(f)).collect();
        assert_eq!(flipped, col.class(0));
        assert_eq!(flipped.len(), 4);
    }

    #[test]
    fn paired_double_flip_cancels() {
        let col = checkerboard();
        let s0 = State::from_mask(0b0110_1001, 8);
        let rule = StateRule::Paired(vec![(0, 1)]);
        let states = propagate_states(&s0, &rule, &col).unwrap();
        assert_eq!(states[0b11], s0);
        assert_eq!(states[0b01], s0.swapped());
    }

    #[test]
    fn paired_needs_even_colours() {
        let p = builtin_octahedron();
        let mut map: Vec<usize> = checkerboard().as_slice().to_vec();
        map[0] = 2;
        let col = Colouring::new(map);
        assert_eq!(col.colours(), 3);
        let s0 = State::from_mask(0, p.facet_count());
        let err = propagate_states(&s0, &StateRule::Paired(vec![(0, 1)]), &col).unwrap_err();
        assert!(matches!(err, ComplexError::OddPairing(3)));
    }

    #[test]
    fn pairing_must_be_a_matching() {
        assert!(StateRule::Paired(vec![(0, 1), (1, 2), (3, 3)]).validate(4).is_err());
        assert!(StateRule::Paired(vec![(0, 1)]).validate(4).is_err());
        assert!(StateRule::Paired(vec![(0, 3), (2, 1)]).validate(4).is_ok());
    }

    #[test]
    fn state_file_round_trip() {
        let p = builtin_octahedron();
        let spec = StateSpec { rule: StateRule::Paired(vec![(0, 1)]), state: State::from_mask(0b1100_0101, 8) };
        let back = StateSpec::parse(&spec.to_text(&p), &p).unwrap();
        assert_eq!(back, spec);
        assert!(StateSpec::parse("1 X", &p).is_err());
        assert!(matches!(StateSpec::parse("1 O", &p), Err(ComplexError::MissingFacet(2))));
    }
}
