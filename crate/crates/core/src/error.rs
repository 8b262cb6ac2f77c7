use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("obj parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("faces of mixed arity ({first} and {other})")]
    MixedArity { first: usize, other: usize },
    #[error("unsupported face arity {0}; only triangles and quads are handled")]
    UnsupportedArity(usize),
    #[error("face {face} references vertex {index}, which is out of range")]
    BadIndex { face: usize, index: i64 },
    #[error("non-manifold mesh: {0}")]
    NonManifold(String),
    #[error("vertex {vertex}: neighbourhood of depth {depth} is truncated or irregular")]
    IncompleteRing { vertex: usize, depth: usize },
    #[error("no modified Loop mask for valence {0}")]
    MaskMissing(usize),
    #[error("invalid mask table: {0}")]
    InvalidMasks(String),
    #[error("numerically singular local system (condition estimate {0:e})")]
    SingularSystem(f64),
    #[error("vertex {0}: basis function vanishes on every active element")]
    UnsupportedBoundary(usize),
    #[error("reference function has zero norm on the sample set")]
    DegenerateFunction,
    #[error("unsupported valence {0} (implemented range 3..=8)")]
    UnsupportedValence(usize),
    #[error("vertex {vertex}: {source}")]
    AtVertex {
        vertex: usize,
        #[source]
        source: Box<Error>,
    },
    #[error("function evaluation failed at ({x:e}, {y:e}, {z:e})")]
    Evaluation { x: f64, y: f64, z: f64 },
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("io error: {0}")]
    Io(String),
    #[error("json error: {0}")]
    Json(String),
}

impl Error {
    pub fn at(self, vertex: usize) -> Error {
        Error::AtVertex {
            vertex,
            source: Box::new(self),
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
