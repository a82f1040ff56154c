//! Text formats for recipes and posets.
//!
//! Recipes: `grid A B` followed by `fork L R N` lines, where `(L, R)` are the
//! grid coordinates of the cell's bottom in the lattice built so far. Posets:
//! `elem NAME` lines, then `cover A B` lines. `#` starts a comment and `;`
//! separates directives on one line.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::construction::{CellAddress, Recipe, Step};
use crate::error::{Error, Result};
use crate::poset::Poset;

fn directives(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().flat_map(|(i, line)| {
        let body = line.split('#').next().unwrap_or("");
        body.split(';')
            .map(|d| d.split_whitespace().collect::<Vec<_>>())
            .filter(|w| !w.is_empty())
            .map(move |w| (i + 1, w))
            .collect::<Vec<_>>()
    })
}

fn parse_error(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn numbers<const K: usize>(line: usize, words: &[&str]) -> Result<[usize; K]> {
    if words.len() != K + 1 {
        return Err(parse_error(
            line,
            format!("'{}' takes {K} arguments", words[0]),
        ));
    }
    let mut out = [0; K];
    for (slot, w) in out.iter_mut().zip(&words[1..]) {
        *slot = w
            .parse()
            .map_err(|_| parse_error(line, format!("'{w}' is not a non-negative integer")))?;
    }
    Ok(out)
}

pub fn parse_recipe(text: &str) -> Result<Recipe> {
    let mut recipe: Option<Recipe> = None;
    let mut last_line = 0;
    for (line, words) in directives(text) {
        last_line = line;
        match (words[0], recipe.as_mut()) {
            ("grid", None) => {
                let [a, b] = numbers::<2>(line, &words)?;
                recipe = Some(Recipe::grid(a, b));
            }
            ("grid", Some(_)) => return Err(parse_error(line, "duplicate 'grid'")),
            ("fork", Some(r)) => {
                let [l, rr, n] = numbers::<3>(line, &words)?;
                r.steps.push(Step {
                    cell: CellAddress { l, r: rr },
                    rank: n,
                });
            }
            ("fork", None) => return Err(parse_error(line, "'fork' before 'grid'")),
            (other, _) => return Err(parse_error(line, format!("unknown directive '{other}'"))),
        }
    }
    recipe.ok_or_else(|| parse_error(last_line.max(1), "missing 'grid'"))
}

impl fmt::Display for Recipe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "grid {} {}", self.grid_a, self.grid_b)?;
        for s in &self.steps {
            writeln!(f, "fork {} {} {}", s.cell.l, s.cell.r, s.rank)?;
        }
        Ok(())
    }
}

impl FromStr for Recipe {
    type Err = Error;

    fn from_str(s: &str) -> Result<Recipe> {
        parse_recipe(s)
    }
}

/// One-line form, e.g. `grid 2 2; fork 0 0 1`, accepted by [`parse_recipe`].
pub fn recipe_inline(r: &Recipe) -> String {
    r.to_string().trim_end().replace('\n', "; ")
}

pub fn parse_poset(text: &str) -> Result<Poset> {
    let mut names: Vec<String> = Vec::new();
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut covers = Vec::new();
    for (line, words) in directives(text) {
        match (words[0], words.len()) {
            ("elem", 2) => {
                if index.insert(words[1].to_string(), names.len()).is_some() {
                    return Err(parse_error(
                        line,
                        format!("duplicate element '{}'", words[1]),
                    ));
                }
                names.push(words[1].to_string());
            }
            ("cover", 3) => {
                let look = |w: &str| {
                    index
                        .get(w)
                        .copied()
                        .ok_or_else(|| parse_error(line, format!("unknown element '{w}'")))
                };
                covers.push((look(words[1])?, look(words[2])?));
            }
            ("elem", _) | ("cover", _) => {
                return Err(parse_error(
                    line,
                    format!("wrong number of arguments to '{}'", words[0]),
                ))
            }
            (other, _) => return Err(parse_error(line, format!("unknown directive '{other}'"))),
        }
    }
    Poset::named_from_relation(names, covers)
}

pub fn print_poset(p: &Poset) -> String {
    let mut out = String::new();
    for name in p.names() {
        out.push_str(&format!("elem {name}\n"));
    }
    for (a, b) in p.covers() {
        out.push_str(&format!("cover {} {}\n", p.name(a), p.name(b)));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn recipe_with_comments() {
        let r = parse_recipe("# S_1\ngrid 2 2\n\nfork 0 0 1 # the only cell\n").unwrap();
        assert_eq!(r, Recipe::grid(2, 2).fork(0, 0, 1));
        assert_eq!(recipe_inline(&r), "grid 2 2; fork 0 0 1");
        assert_eq!(parse_recipe(&recipe_inline(&r)).unwrap(), r);
    }

    #[test]
    fn recipe_errors_carry_lines() {
        assert_eq!(
            parse_recipe("grid 2 2\nfork x").unwrap_err(),
            Error::Parse {
                line: 2,
                message: "'fork' takes 3 arguments".into()
            }
        );
        assert!(matches!(
            parse_recipe("fork 0 0 1"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            parse_recipe("grid 2 2\nbogus"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(parse_recipe(""), Err(Error::Parse { .. })));
    }

    #[test]
    fn poset_round_trip() {
        let p = parse_poset(
            "elem p\nelem x\nelem y\nelem z\ncover p x; cover p y\ncover x z\ncover y z\n",
        )
        .unwrap();
        assert_eq!(p.len(), 4);
        assert!(p.leq(0, 3));
        let q = parse_poset(&print_poset(&p)).unwrap();
        assert_eq!(q.names(), p.names());
        assert!(q.is_isomorphic(&p));
        assert!(matches!(
            parse_poset("elem a\ncover a b"),
            Err(Error::Parse { line: 2, .. })
        ));
    }

    proptest! {
        #[test]
        fn recipe_print_parse_round_trip(
            a in 2usize..9, b in 2usize..9,
            steps in proptest::collection::vec((0usize..9, 0usize..9, 1usize..5), 0..5),
        ) {
            let mut r = Recipe::grid(a, b);
            for (l, rr, n) in steps {
                r = r.fork(l, rr, n);
            }
            prop_assert_eq!(parse_recipe(&r.to_string()).unwrap(), r.clone());
            prop_assert_eq!(parse_recipe(&recipe_inline(&r)).unwrap(), r);
        }
    }
}
