//! Line-oriented algebra files.
//!
//! ```text
//! vertex 1
//! vertex 2
//! arrow a 1 2
//! arrow b 2 1
//! relation a b
//! char 0
//! ```

use std::fmt::Write as _;

use thiserror::Error;

use crate::algebra::{AlgebraError, MonomialAlgebra};
use crate::quiver::{Quiver, QuiverError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("line {line}: {source}")]
    Quiver { line: usize, source: QuiverError },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Statement {
    Vertex(String),
    Arrow(String, String, String),
    Relation(Vec<String>),
    Char(u64),
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct AlgebraFile {
    pub statements: Vec<Statement>,
    /// source line of each statement
    lines: Vec<usize>,
}

impl AlgebraFile {
    pub fn parse(text: &str) -> Result<Self, FormatError> {
        let mut file = AlgebraFile::default();
        let mut seen_char = false;
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let content = raw.split('#').next().unwrap().trim();
            if content.is_empty() {
                continue;
            }
            let mut words = content.split_whitespace();
            let keyword = words.next().unwrap();
            let args: Vec<String> = words.map(str::to_string).collect();
            let err = |message: String| FormatError::Parse { line, message };
            for a in &args {
                if a.starts_with('@') {
                    return Err(err(format!("identifier `{a}` may not start with `@`")));
                }
            }
            let st = match keyword {
                "vertex" => match args.as_slice() {
                    [v] => Statement::Vertex(v.clone()),
                    _ => return Err(err("expected `vertex <id>`".into())),
                },
                "arrow" => match args.as_slice() {
                    [a, s, t] => Statement::Arrow(a.clone(), s.clone(), t.clone()),
                    _ => return Err(err("expected `arrow <id> <src> <dst>`".into())),
                },
                "relation" => {
                    if args.is_empty() {
                        return Err(err("expected `relation <arrow-id> ...`".into()));
                    }
                    Statement::Relation(args)
                }
                "char" => {
                    if seen_char {
                        return Err(err("duplicate `char` line".into()));
                    }
                    seen_char = true;
                    match args.as_slice() {
                        [c] => Statement::Char(c.parse().map_err(|_| err(format!("bad characteristic `{c}`")))?),
                        _ => return Err(err("expected `char <0|p>`".into())),
                    }
                }
                other => return Err(err(format!("unknown keyword `{other}`"))),
            };
            file.statements.push(st);
            file.lines.push(line);
        }
        Ok(file)
    }

    /// Canonical text; parsing it back gives the same statements.
    pub fn emit(&self) -> String {
        let mut out = String::new();
        for st in &self.statements {
            match st {
                Statement::Vertex(v) => writeln!(out, "vertex {v}"),
                Statement::Arrow(a, s, t) => writeln!(out, "arrow {a} {s} {t}"),
                Statement::Relation(r) => writeln!(out, "relation {}", r.join(" ")),
                Statement::Char(c) => writeln!(out, "char {c}"),
            }
            .unwrap();
        }
        out
    }

    pub fn characteristic(&self) -> Option<u64> {
        self.statements.iter().find_map(|s| match s {
            Statement::Char(c) => Some(*c),
            _ => None,
        })
    }

    pub fn set_characteristic(&mut self, c: u64) {
        self.statements.retain(|s| !matches!(s, Statement::Char(_)));
        self.statements.push(Statement::Char(c));
        self.lines.push(0);
    }

    pub fn from_algebra(alg: &MonomialAlgebra) -> Self {
        let q = alg.quiver();
        let mut statements = Vec::new();
        for v in 0..q.num_vertices() {
            statements.push(Statement::Vertex(q.vertex_name(v as u32).to_string()));
        }
        for a in q.arrows() {
            statements.push(Statement::Arrow(
                a.name.clone(),
                q.vertex_name(a.source).to_string(),
                q.vertex_name(a.target).to_string(),
            ));
        }
        for r in alg.relations() {
            statements.push(Statement::Relation(r.arrows().iter().map(|&a| q.arrow_info(a).name.clone()).collect()));
        }
        if alg.characteristic() != 0 {
            statements.push(Statement::Char(alg.characteristic()));
        }
        let lines = vec![0; statements.len()];
        AlgebraFile { statements, lines }
    }

    pub fn to_algebra(&self) -> Result<MonomialAlgebra, FormatError> {
        let mut q = Quiver::new();
        let line_of = |i: usize| self.lines.get(i).copied().unwrap_or(0);
        for (i, st) in self.statements.iter().enumerate() {
            if let Statement::Vertex(v) = st {
                q.add_vertex(v).map_err(|source| FormatError::Quiver { line: line_of(i), source })?;
            }
        }
        for (i, st) in self.statements.iter().enumerate() {
            if let Statement::Arrow(a, s, t) = st {
                q.add_arrow(a, s, t).map_err(|source| FormatError::Quiver { line: line_of(i), source })?;
            }
        }
        let mut rels = Vec::new();
        for (i, st) in self.statements.iter().enumerate() {
            if let Statement::Relation(names) = st {
                let ids = names
                    .iter()
                    .map(|n| q.arrow(n))
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(|source| FormatError::Quiver { line: line_of(i), source })?;
                q.path(&ids).map_err(|source| FormatError::Quiver { line: line_of(i), source })?;
                rels.push(ids);
            }
        }
        Ok(MonomialAlgebra::build(q, rels, self.characteristic().unwrap_or(0))?)
    }
}

pub fn load_algebra(text: &str) -> Result<MonomialAlgebra, FormatError> {
    AlgebraFile::parse(text)?.to_algebra()
}

#[cfg(test)]
mod tests {
    use super::*;

    const TWO_CYCLE: &str = "vertex 1\nvertex 2\narrow a 1 2\narrow b 2 1\nrelation a b\nrelation b a\n";

    #[test]
    fn round_trip_is_byte_identical() {
        let f = AlgebraFile::parse(TWO_CYCLE).unwrap();
        assert_eq!(f.emit(), TWO_CYCLE);
        let commented = format!("# two cycle\n{TWO_CYCLE}# end\n");
        assert_eq!(AlgebraFile::parse(&commented).unwrap().emit(), TWO_CYCLE);
    }

    #[test]
    fn errors_carry_lines() {
        let bad = "vertex 1\narrow a 1\n";
        match AlgebraFile::parse(bad) {
            Err(FormatError::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
        let unknown = "vertex 1\narrow a 1 1\nrelation a z\n";
        match load_algebra(unknown) {
            Err(FormatError::Quiver { line, .. }) => assert_eq!(line, 3),
            other => panic!("{other:?}"),
        }
        assert!(matches!(AlgebraFile::parse("char 2\nchar 3\n"), Err(FormatError::Parse { line: 2, .. })));
    }

    #[test]
    fn from_algebra_emits_the_source() {
        let alg = load_algebra(TWO_CYCLE).unwrap();
        assert_eq!(AlgebraFile::from_algebra(&alg).emit(), TWO_CYCLE);
    }
}
