use std::path::PathBuf;
use std::sync::Arc;

use clap::Args;
use serde::Deserialize;

use subdqi::mesh::generate::Family;
use subdqi::schemes::{MLoopMasks, SchemeId};

use crate::Failure;

/// Options shared by every command. Values given as flags override the
/// JSON config file.
#[derive(Args, Debug, Default, Clone)]
pub struct Common {
    /// cc, loop or mloop.
    #[arg(long)]
    pub scheme: Option<String>,
    /// Valence of the extraordinary vertex.
    #[arg(long)]
    pub valence: Option<usize>,
    /// OBJ file to read.
    #[arg(long)]
    pub mesh: Option<PathBuf>,
    /// Generated test mesh, `quad:N` or `tri:N`.
    #[arg(long = "gen")]
    pub generator: Option<String>,
    /// Modified Loop mask table (JSON).
    #[arg(long)]
    pub masks: Option<PathBuf>,
    /// Refinement levels: `N` (1..=N), `A..B` or `A,B,C`.
    #[arg(long)]
    pub levels: Option<String>,
    /// Extra refinement depth used for sampling.
    #[arg(long)]
    pub depth: Option<usize>,
    /// Output directory.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// JSON file with any of the options above.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Deserialize, Debug, Default)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    scheme: Option<String>,
    valence: Option<usize>,
    mesh: Option<PathBuf>,
    #[serde(rename = "gen")]
    generator: Option<String>,
    masks: Option<PathBuf>,
    levels: Option<LevelsSpec>,
    depth: Option<usize>,
    out: Option<PathBuf>,
    function: Option<String>,
}

#[derive(Deserialize, Debug)]
#[serde(untagged)]
enum LevelsSpec {
    List(Vec<usize>),
    Count(usize),
    Text(String),
}

#[derive(Debug, Clone, Default)]
pub struct Resolved {
    pub scheme_name: Option<String>,
    pub valence: Option<usize>,
    pub mesh: Option<PathBuf>,
    pub generator: Option<(Family, usize)>,
    pub masks: Option<PathBuf>,
    pub levels: Option<Vec<usize>>,
    pub depth: Option<usize>,
    pub out: Option<PathBuf>,
    pub function: Option<String>,
}

fn invalid(msg: impl Into<String>) -> Failure {
    Failure::Invalid(msg.into())
}

pub fn parse_levels(text: &str) -> Result<Vec<usize>, Failure> {
    let num = |s: &str| s.trim().parse::<usize>().map_err(|_| invalid(format!("bad level list '{text}'")));
    let levels = if let Some((a, b)) = text.split_once("..") {
        let (a, b) = (num(a)?, num(b.trim_start_matches('='))?);
        (a..=b).collect()
    } else if text.contains(',') {
        text.split(',').map(num).collect::<Result<Vec<_>, _>>()?
    } else {
        (1..=num(text)?).collect()
    };
    check_levels(levels)
}

fn check_levels(levels: Vec<usize>) -> Result<Vec<usize>, Failure> {
    if levels.is_empty() || levels.windows(2).any(|w| w[0] >= w[1]) {
        return Err(invalid(format!("levels must be increasing and non-empty, got {levels:?}")));
    }
    Ok(levels)
}

pub fn parse_generator(text: &str) -> Result<(Family, usize), Failure> {
    let bad = || invalid(format!("bad generator '{text}', expected quad:N or tri:N"));
    let (family, n) = text.split_once(':').ok_or_else(bad)?;
    let family = match family {
        "quad" => Family::Quad,
        "tri" => Family::Tri,
        _ => return Err(bad()),
    };
    Ok((family, n.parse().map_err(|_| bad())?))
}

impl Common {
    pub fn resolve(self) -> Result<Resolved, Failure> {
        let file = match &self.config {
            Some(path) => {
                let text = std::fs::read_to_string(path).map_err(|e| invalid(format!("{}: {e}", path.display())))?;
                serde_json::from_str::<FileConfig>(&text).map_err(|e| invalid(format!("{}: {e}", path.display())))?
            }
            None => FileConfig::default(),
        };
        let levels = match (self.levels, file.levels) {
            (Some(t), _) => Some(parse_levels(&t)?),
            (None, Some(LevelsSpec::Text(t))) => Some(parse_levels(&t)?),
            (None, Some(LevelsSpec::Count(n))) => Some(parse_levels(&n.to_string())?),
            (None, Some(LevelsSpec::List(l))) => Some(check_levels(l)?),
            (None, None) => None,
        };
        let generator = self.generator.or(file.generator).map(|g| parse_generator(&g)).transpose()?;
        let depth = self.depth.or(file.depth);
        if depth == Some(0) {
            return Err(invalid("--depth must be at least 1"));
        }
        Ok(Resolved {
            scheme_name: self.scheme.or(file.scheme),
            valence: self.valence.or(file.valence).or(generator.map(|g| g.1)),
            mesh: self.mesh.or(file.mesh),
            generator,
            masks: self.masks.or(file.masks),
            levels,
            depth,
            out: self.out.or(file.out),
            function: file.function,
        })
    }
}

impl Resolved {
    pub fn scheme(&self) -> Result<SchemeId, Failure> {
        match self.scheme_name.as_deref() {
            Some("cc") => Ok(SchemeId::CatmullClark),
            Some("loop") => Ok(SchemeId::Loop),
            Some("mloop") => {
                let path = self.masks.as_ref().ok_or_else(|| invalid("the mloop scheme needs --masks"))?;
                Ok(SchemeId::ModifiedLoop(Arc::new(MLoopMasks::load(path)?)))
            }
            Some(other) => Err(invalid(format!("unknown scheme '{other}' (cc, loop, mloop)"))),
            None => Err(invalid("--scheme is required")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn level_syntax() {
        assert_eq!(parse_levels("2..5").unwrap(), vec![2, 3, 4, 5]);
        assert_eq!(parse_levels("2..=4").unwrap(), vec![2, 3, 4]);
        assert_eq!(parse_levels("1,3").unwrap(), vec![1, 3]);
        assert_eq!(parse_levels("3").unwrap(), vec![1, 2, 3]);
        assert!(parse_levels("3,2").is_err());
        assert!(parse_levels("x").is_err());
    }

    #[test]
    fn generator_syntax() {
        assert_eq!(parse_generator("quad:5").unwrap(), (Family::Quad, 5));
        assert_eq!(parse_generator("tri:7").unwrap(), (Family::Tri, 7));
        assert!(parse_generator("hex:3").is_err());
    }

    #[test]
    fn flags_override_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("run.json");
        std::fs::write(&path, r#"{"scheme": "loop", "valence": 5, "levels": "1..3", "depth": 2}"#).unwrap();
        let common = Common { scheme: Some("cc".into()), config: Some(path), ..Default::default() };
        let r = common.resolve().unwrap();
        assert_eq!(r.scheme_name.as_deref(), Some("cc"));
        assert_eq!(r.valence, Some(5));
        assert_eq!(r.levels, Some(vec![1, 2, 3]));
        assert_eq!(r.depth, Some(2));
    }
}
