use std::collections::HashMap;

use super::ComplexError;
use crate::polytope::Polytope;

/// Assignment of colours `0..c` to facets (files use `1..=c`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Colouring {
    colours: usize,
    map: Vec<usize>,
}

impl Colouring {
    /// `map[i]` is the 0-based colour of facet index `i`; `c` is one more than the largest.
    pub fn new(map: Vec<usize>) -> Self {
        let colours = map.iter().max().map_or(0, |m| m + 1);
        Self { colours, map }
    }

    /// Builds a colouring from `(facet id, colour ≥ 1)` pairs covering every facet.
    pub fn from_ids(p: &Polytope, entries: &[(u32, usize)]) -> Result<Self, ComplexError> {
        let mut map = vec![None; p.facet_count()];
        for &(id, colour) in entries {
            let i = p.facet_index(id).ok_or(ComplexError::UnknownFacet(id))?;
            if colour == 0 {
                return Err(ComplexError::Parse(format!("facet {id}: colours start at 1")));
            }
            if map[i].replace(colour - 1).is_some() {
                return Err(ComplexError::Parse(format!("facet {id} coloured twice")));
            }
        }
        let map = map
            .into_iter()
            .enumerate()
            .map(|(i, c)| c.ok_or(ComplexError::MissingFacet(p.facet_id(i))))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self::new(map))
    }

    /// Parses `facet_id colour` lines; `#` starts a comment.
    pub fn parse(text: &str, p: &Polytope) -> Result<Self, ComplexError> {
        let mut entries = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = strip_comment(line);
            if line.is_empty() {
                continue;
            }
            let mut parts = line.split_whitespace();
            let (Some(id), Some(colour), None) = (parts.next(), parts.next(), parts.next()) else {
                return Err(ComplexError::Parse(format!("colouring line {}: expected `facet colour`", lineno + 1)));
            };
            let id = id
                .parse()
                .map_err(|_| ComplexError::Parse(format!("colouring line {}: bad facet id", lineno + 1)))?;
            let colour = colour
                .parse()
                .map_err(|_| ComplexError::Parse(format!("colouring line {}: bad colour", lineno + 1)))?;
            entries.push((id, colour));
        }
        Self::from_ids(p, &entries)
    }

    pub fn to_text(&self, p: &Polytope) -> String {
        self.map.iter().enumerate().map(|(i, c)| format!("{} {}\n", p.facet_id(i), c + 1)).collect()
    }

    /// Number of colours `c`.
    pub fn colours(&self) -> usize {
        self.colours
    }

    /// 0-based colour of facet index `i`.
    pub fn colour(&self, i: usize) -> usize {
        self.map[i]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.map
    }

    /// Facet indices carrying colour `c`.
    pub fn class(&self, c: usize) -> Vec<usize> {
        (0..self.map.len()).filter(|&i| self.map[i] == c).collect()
    }

    /// Checkerboard colouring of a bipartite facet graph, if one exists.
    pub fn two_colouring(p: &Polytope) -> Option<Self> {
        let mut colour: HashMap<usize, usize> = HashMap::new();
        for start in 0..p.facet_count() {
            if colour.contains_key(&start) {
                continue;
            }
            colour.insert(start, 0);
            let mut stack = vec![start];
            while let Some(f) = stack.pop() {
                let cf = colour[&f];
                for g in p.neighbours(f) {
                    match colour.get(&g) {
                        Some(&cg) if cg == cf => return None,
                        Some(_) => {}
                        None => {
                            colour.insert(g, 1 - cf);
                            stack.push(g);
                        }
                    }
                }
            }
        }
        Some(Self::new((0..p.facet_count()).map(|i| colour[&i]).collect()))
    }
}

pub(crate) fn strip_comment(line: &str) -> &str {
    line.split('#').next().unwrap_or("").trim()
}

/// Adjacent facet pairs (by id) that share a colour; empty means the colouring is proper.
pub fn validate_colouring(p: &Polytope, col: &Colouring) -> Result<Vec<(u32, u32)>, ComplexError> {
    if col.as_slice().len() != p.facet_count() {
        let missing = col.as_slice().len().min(p.facet_count());
        return Err(ComplexError::MissingFacet(p.facet_id(missing.min(p.facet_count() - 1))));
    }
    let mut clashes = Vec::new();
    for i in 0..p.facet_count() {
        for j in (i + 1)..p.facet_count() {
            if p.adjacent(i, j) && col.colour(i) == col.colour(j) {
                clashes.push((p.facet_id(i), p.facet_id(j)));
            }
        }
    }
    Ok(clashes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::builtin_octahedron;

    fn sign_parity(p: &Polytope, i: usize) -> usize {
        p.facets()[i].normal[..3].iter().filter(|x| !x.is_positive()).count() % 2
    }

    #[test]
    fn checkerboard_is_valid() {
        let p = builtin_octahedron();
        let col = Colouring::new((0..8).map(|i| sign_parity(&p, i)).collect());
        assert!(validate_colouring(&p, &col).unwrap().is_empty());
        assert_eq!(col.colours(), 2);
        assert_eq!(Colouring::two_colouring(&p).map(|c| c.colours()), Some(2));
    }

    #[test]
    fn monochrome_has_twelve_violations() {
        let p = builtin_octahedron();
        let col = Colouring::new(vec![0; 8]);
        assert_eq!(validate_colouring(&p, &col).unwrap().len(), 12);
    }

    #[test]
    fn greedy_three_colouring_is_valid() {
        let p = builtin_octahedron();
        let mut map: Vec<Option<usize>> = vec![None; 8];
        // visit in reverse so the greedy choice is not just the bipartition
        for i in (0..8).rev() {
            let used: Vec<usize> = p.neighbours(i).filter_map(|j| map[j]).collect();
            let c = (0..).find(|c| !used.contains(c)).unwrap();
            map[i] = Some(c);
        }
        // force a third colour on one facet whose neighbours do not use it
        map[0] = Some(2);
        let col = Colouring::new(map.into_iter().map(Option::unwrap).collect());
        assert_eq!(col.colours(), 3);
        assert!(validate_colouring(&p, &col).unwrap().is_empty());
    }

    #[test]
    fn parse_requires_every_facet() {
        let p = builtin_octahedron();
        let err = Colouring::parse("1 1\n2 2\n", &p).unwrap_err();
        assert!(matches!(err, ComplexError::MissingFacet(3)));
        let text = "# comment\n1 1\n2 2\n3 2\n4 1\n5 2\n6 1\n7 1\n8 2 # trailing\n";
        let col = Colouring::parse(text, &p).unwrap();
        assert_eq!(col.colour(7), 1);
        assert!(matches!(Colouring::parse("9 1", &p), Err(ComplexError::UnknownFacet(9))));
    }
}
