//! Group specifications given as strings:
//!
//! - `cyclic:N`: `Z_N`, generator 1;
//! - `product:a,b,...`: `Z_a × Z_b × …`;
//! - `dihedral:N`, `s3`, `q8`, `a4`: groups from [`crate::group::catalog`];
//! - `perm:FILE`: permutation generators read from a JSON file.
//!
//! The permutation file has the form
//! `{"name": "S3", "degree": 3, "generators": [[1,2,0], "(0 1)"]}`, where a
//! generator is either an image array or a string in cycle notation. The
//! same file may instead be tagged: `{"kind":"cyclic","n":N}`,
//! `{"kind":"product","factors":[a,b]}` or `{"kind":"perm","degree":D,...}`.

use std::path::Path;

use serde::Deserialize;

use crate::autgroup::Permutation;
use crate::error::{Error, Result};
use crate::group::{catalog, FiniteGroup};

#[derive(Debug, Clone, Deserialize)]
pub struct PermGroupFile {
    #[serde(default)]
    pub name: Option<String>,
    pub degree: usize,
    pub generators: Vec<PermInput>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum TaggedGroupFile {
    Cyclic { n: usize },
    Product { factors: Vec<usize> },
    Perm(PermGroupFile),
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
enum GroupFile {
    Tagged(TaggedGroupFile),
    Perm(PermGroupFile),
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum PermInput {
    Images(Vec<usize>),
    Cycles(String),
}

impl PermInput {
    pub fn images(&self, degree: usize) -> Result<Vec<usize>> {
        match self {
            PermInput::Images(v) => Ok(v.clone()),
            PermInput::Cycles(s) => Ok(parse_cycles(degree, s)?.images().to_vec()),
        }
    }
}

/// Parses cycle notation such as `(0 1 2)(3 4)`; `()` is the identity.
pub fn parse_cycles(degree: usize, text: &str) -> Result<Permutation> {
    let bad = || Error::InvalidPermutation(format!("cannot parse cycles '{text}'"));
    let mut cycles: Vec<Vec<usize>> = Vec::new();
    let mut rest = text.trim();
    while !rest.is_empty() {
        let body = rest.strip_prefix('(').ok_or_else(bad)?;
        let close = body.find(')').ok_or_else(bad)?;
        let cycle = body[..close]
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<usize>().map_err(|_| bad()))
            .collect::<Result<Vec<_>>>()?;
        cycles.push(cycle);
        rest = body[close + 1..].trim_start();
    }
    let refs: Vec<&[usize]> = cycles.iter().map(|c| c.as_slice()).collect();
    Permutation::from_cycles(degree, &refs)
}

/// A parsed group with a display label.
#[derive(Debug, Clone)]
pub struct GroupInput {
    pub label: String,
    pub group: FiniteGroup,
}

fn parse_count(text: &str, what: &str) -> Result<usize> {
    text.trim()
        .parse()
        .map_err(|_| Error::Malformed(format!("{what}: expected a positive integer, got '{text}'")))
}

pub fn load_perm_group(path: &Path) -> Result<GroupInput> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Malformed(format!("{}: {e}", path.display())))?;
    let file: GroupFile = serde_json::from_str(&text)
        .map_err(|e| Error::Malformed(format!("{}: {e}", path.display())))?;
    let file = match file {
        GroupFile::Tagged(TaggedGroupFile::Cyclic { n }) => {
            return parse_group_spec(&format!("cyclic:{n}"))
        }
        GroupFile::Tagged(TaggedGroupFile::Product { factors }) => {
            let list: Vec<String> = factors.iter().map(|f| f.to_string()).collect();
            return parse_group_spec(&format!("product:{}", list.join(",")));
        }
        GroupFile::Tagged(TaggedGroupFile::Perm(f)) | GroupFile::Perm(f) => f,
    };
    let gens = file
        .generators
        .iter()
        .map(|g| g.images(file.degree))
        .collect::<Result<Vec<_>>>()?;
    let group = FiniteGroup::from_permutation_generators(file.degree, &gens)?;
    let label = file
        .name
        .unwrap_or_else(|| format!("perm:{}", path.display()));
    Ok(GroupInput { label, group })
}

/// Parses a group specification string.
pub fn parse_group_spec(spec: &str) -> Result<GroupInput> {
    let (kind, arg) = spec.split_once(':').unwrap_or((spec, ""));
    let group = match kind {
        "cyclic" => FiniteGroup::cyclic(parse_count(arg, "cyclic")?)?,
        "product" => {
            let factors = arg
                .split(',')
                .map(|f| parse_count(f, "product").and_then(FiniteGroup::cyclic))
                .collect::<Result<Vec<_>>>()?;
            let (first, rest) = factors
                .split_first()
                .ok_or_else(|| Error::Malformed("product: no factors".into()))?;
            rest.iter()
                .fold(first.clone(), |acc, f| FiniteGroup::direct_product(&acc, f))
        }
        "dihedral" => catalog::dihedral(parse_count(arg, "dihedral")?)?,
        "s3" => catalog::symmetric3(),
        "q8" => catalog::quaternion(),
        "a4" => catalog::alternating4(),
        "perm" => return load_perm_group(Path::new(arg)),
        _ => return Err(Error::Malformed(format!("unknown group spec '{spec}'"))),
    };
    Ok(GroupInput {
        label: spec.to_string(),
        group,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_builtin_specs() {
        assert_eq!(parse_group_spec("cyclic:7").unwrap().group.order(), 7);
        let k = parse_group_spec("product:2,2").unwrap().group;
        assert!(k.is_klein_four());
        assert_eq!(parse_group_spec("product:2,3,2").unwrap().group.order(), 12);
        assert_eq!(parse_group_spec("dihedral:5").unwrap().group.order(), 10);
        assert_eq!(parse_group_spec("q8").unwrap().group.order(), 8);
        assert!(parse_group_spec("cyclic:x").is_err());
        assert!(parse_group_spec("cyclic:0").is_err());
        assert!(parse_group_spec("free:2").is_err());
    }

    #[test]
    fn cycle_notation() {
        let p = parse_cycles(5, "(0 1 2)(3, 4)").unwrap();
        assert_eq!(p.images(), &[1, 2, 0, 4, 3]);
        assert!(parse_cycles(3, "()").unwrap().is_identity());
        assert!(parse_cycles(3, "(0 1").is_err());
        assert!(parse_cycles(3, "(0 5)").is_err());
    }

    #[test]
    fn perm_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("s3.json");
        std::fs::write(
            &path,
            r#"{"name":"S3","degree":3,"generators":[[1,2,0],"(0 1)"]}"#,
        )
        .unwrap();
        let g = parse_group_spec(&format!("perm:{}", path.display())).unwrap();
        assert_eq!(g.label, "S3");
        assert_eq!(g.group.order(), 6);
        assert!(!g.group.is_abelian());
    }

    #[test]
    fn tagged_group_files() {
        let dir = tempfile::tempdir().unwrap();
        let cases = [
            (r#"{"kind":"cyclic","n":6}"#, 6),
            (r#"{"kind":"product","factors":[2,2]}"#, 4),
            (r#"{"kind":"perm","degree":4,"generators":[[1,2,3,0]]}"#, 4),
        ];
        for (i, (doc, order)) in cases.into_iter().enumerate() {
            let path = dir.path().join(format!("g{i}.json"));
            std::fs::write(&path, doc).unwrap();
            let g = parse_group_spec(&format!("perm:{}", path.display())).unwrap();
            assert_eq!(g.group.order(), order, "{doc}");
        }
        let path = dir.path().join("bad.json");
        std::fs::write(&path, r#"{"kind":"cyclic"}"#).unwrap();
        assert!(parse_group_spec(&format!("perm:{}", path.display())).is_err());
    }
}
