//! Many-one reductions from NP-complete source problems to UCP decision
//! instances. Each reduction also returns a back-map that turns a witnessing
//! partition into a certificate for the source problem.

mod graph;
mod numeric;

use std::fmt;

use serde::{Deserialize, Serialize};

pub use graph::{reduce_bisection, reduce_cliquecover, reduce_coloring, reduce_fdcs};
pub use numeric::{embed_kmedian, reduce_kmeans_to_birch, reduce_l0_to_ssc, reduce_ufl_to_ap, ufl_big_m};

use crate::instance::{InstanceError, UcpDecisionInstance};
use crate::linalg::RationalMatrix;
use crate::model::{EuclideanInstance, GraphInstance, MetricInstance};
use crate::partition::Partition;
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ReductionError {
    #[error("size s={size} must lie in 1..={} for a graph on {n} vertices", .n.saturating_sub(1))]
    DegenerateSize { size: usize, n: usize },
    #[error("minimum bisection needs an even number of vertices, got {0}")]
    OddN(usize),
    #[error("target vector b is zero")]
    ZeroTarget,
    #[error("k={k} is outside 1..={n}")]
    InvalidK { k: usize, n: usize },
    #[error("invalid source instance: {0}")]
    InvalidSource(String),
    #[error(transparent)]
    Instance(#[from] InstanceError),
}

/// Uncapacitated facility location: opening costs per facility and service
/// costs `service[client][facility]`. JSON form:
/// `{"facilities": [{"f": ..}], "clients": [{"c": [..]}]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "UflJson", into = "UflJson")]
pub struct UflInstance {
    opening: Vec<Rational>,
    service: Vec<Vec<Rational>>,
}

impl UflInstance {
    pub fn new(opening: Vec<Rational>, service: Vec<Vec<Rational>>) -> Result<Self, ReductionError> {
        if opening.is_empty() || service.is_empty() {
            return Err(ReductionError::InvalidSource("need at least one facility and one client".into()));
        }
        if let Some(row) = service.iter().position(|r| r.len() != opening.len()) {
            return Err(ReductionError::InvalidSource(format!(
                "client {} has {} service costs for {} facilities",
                row + 1,
                service[row].len(),
                opening.len()
            )));
        }
        Ok(UflInstance { opening, service })
    }

    pub fn from_i64(opening: &[i64], service: &[&[i64]]) -> Result<Self, ReductionError> {
        Self::new(
            opening.iter().map(|&f| f.into()).collect(),
            service.iter().map(|row| row.iter().map(|&c| c.into()).collect()).collect(),
        )
    }

    pub fn num_facilities(&self) -> usize {
        self.opening.len()
    }

    pub fn num_clients(&self) -> usize {
        self.service.len()
    }

    pub fn opening(&self, facility: usize) -> &Rational {
        &self.opening[facility]
    }

    pub fn service(&self, client: usize, facility: usize) -> &Rational {
        &self.service[client][facility]
    }

    /// Total cost of opening `open` and serving each client from its cheapest
    /// open facility. `open` must be nonempty.
    pub fn cost(&self, open: &[usize]) -> Rational {
        assert!(!open.is_empty(), "at least one facility must open");
        let opening: Rational = open.iter().map(|&j| &self.opening[j]).sum();
        let serving: Rational = self
            .service
            .iter()
            .map(|row| open.iter().map(|&j| &row[j]).min().expect("nonempty").clone())
            .sum();
        opening + serving
    }
}

#[derive(Serialize, Deserialize)]
struct FacilityJson {
    f: Rational,
}

#[derive(Serialize, Deserialize)]
struct ClientJson {
    c: Vec<Rational>,
}

#[derive(Serialize, Deserialize)]
struct UflJson {
    facilities: Vec<FacilityJson>,
    clients: Vec<ClientJson>,
}

impl TryFrom<UflJson> for UflInstance {
    type Error = ReductionError;

    fn try_from(raw: UflJson) -> Result<Self, Self::Error> {
        UflInstance::new(raw.facilities.into_iter().map(|f| f.f).collect(), raw.clients.into_iter().map(|c| c.c).collect())
    }
}

impl From<UflInstance> for UflJson {
    fn from(u: UflInstance) -> Self {
        UflJson {
            facilities: u.opening.into_iter().map(|f| FacilityJson { f }).collect(),
            clients: u.service.into_iter().map(|c| ClientJson { c }).collect(),
        }
    }
}

/// Sparse solution question: is there `z` with `Az = b` and at most `t`
/// nonzeros? JSON form: `{"A": [[..]], "b": [..], "t": ..}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "L0Json")]
pub struct L0Instance {
    #[serde(rename = "A")]
    a: RationalMatrix,
    b: Vec<Rational>,
    t: usize,
}

#[derive(Deserialize)]
struct L0Json {
    #[serde(rename = "A")]
    a: RationalMatrix,
    b: Vec<Rational>,
    t: usize,
}

impl TryFrom<L0Json> for L0Instance {
    type Error = ReductionError;

    fn try_from(raw: L0Json) -> Result<Self, Self::Error> {
        L0Instance::new(raw.a, raw.b, raw.t)
    }
}

impl L0Instance {
    pub fn new(a: RationalMatrix, b: Vec<Rational>, t: usize) -> Result<Self, ReductionError> {
        if a.rows() == 0 || a.cols() == 0 {
            return Err(ReductionError::InvalidSource("A must have at least one row and one column".into()));
        }
        if b.len() != a.rows() {
            return Err(ReductionError::InvalidSource(format!("b has {} entries, A has {} rows", b.len(), a.rows())));
        }
        Ok(L0Instance { a, b, t })
    }

    pub fn a(&self) -> &RationalMatrix {
        &self.a
    }

    pub fn b(&self) -> &[Rational] {
        &self.b
    }

    pub fn t(&self) -> usize {
        self.t
    }
}

/// A source-problem instance together with its decision parameters.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SourceInstance {
    Coloring { graph: GraphInstance, colors: usize },
    Fdcs { graph: GraphInstance, size: usize, min_edges: usize },
    Bisection { graph: GraphInstance, budget: usize },
    CliqueCover { graph: GraphInstance, cliques: usize },
    Kmeans { points: EuclideanInstance, k: usize, budget: Rational },
    Ufl { ufl: UflInstance, budget: Rational },
    L0(L0Instance),
    Kmedian { metric: MetricInstance, k: usize, budget: Rational },
}

impl SourceInstance {
    pub fn kind(&self) -> ReductionKind {
        match self {
            SourceInstance::Coloring { .. } => ReductionKind::Coloring,
            SourceInstance::Fdcs { .. } => ReductionKind::Fdcs,
            SourceInstance::Bisection { .. } => ReductionKind::Bisection,
            SourceInstance::CliqueCover { .. } => ReductionKind::CliqueCover,
            SourceInstance::Kmeans { .. } => ReductionKind::KmeansBirch,
            SourceInstance::Ufl { .. } => ReductionKind::UflAp,
            SourceInstance::L0(_) => ReductionKind::L0Ssc,
            SourceInstance::Kmedian { .. } => ReductionKind::Kmedian,
        }
    }

    /// Compact parameter summary, used in reports.
    pub fn params(&self) -> String {
        match self {
            SourceInstance::Coloring { graph, colors } => {
                format!("n={} m={} kappa={colors}", graph.n(), graph.num_edges())
            }
            SourceInstance::Fdcs { graph, size, min_edges } => {
                format!("n={} m={} s={size} tau={min_edges}", graph.n(), graph.num_edges())
            }
            SourceInstance::Bisection { graph, budget } => {
                format!("n={} m={} B={budget}", graph.n(), graph.num_edges())
            }
            SourceInstance::CliqueCover { graph, cliques } => {
                format!("n={} m={} k={cliques}", graph.n(), graph.num_edges())
            }
            SourceInstance::Kmeans { points, k, budget } => {
                format!("n={} p={} k={k} B={budget}", points.n(), points.dim())
            }
            SourceInstance::Ufl { ufl, budget } => {
                format!("F={} D={} B={budget}", ufl.num_facilities(), ufl.num_clients())
            }
            SourceInstance::L0(l) => format!("m={} n={} t={}", l.a.rows(), l.a.cols(), l.t),
            SourceInstance::Kmedian { metric, k, budget } => format!("n={} k={k} B={budget}", metric.n()),
        }
    }
}

/// The reductions, by source problem.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ReductionKind {
    Coloring,
    Fdcs,
    Bisection,
    CliqueCover,
    KmeansBirch,
    UflAp,
    L0Ssc,
    Kmedian,
}

impl ReductionKind {
    pub const ALL: [ReductionKind; 8] = [
        ReductionKind::Coloring,
        ReductionKind::Fdcs,
        ReductionKind::Bisection,
        ReductionKind::CliqueCover,
        ReductionKind::KmeansBirch,
        ReductionKind::UflAp,
        ReductionKind::L0Ssc,
        ReductionKind::Kmedian,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ReductionKind::Coloring => "coloring",
            ReductionKind::Fdcs => "fdcs",
            ReductionKind::Bisection => "bisection",
            ReductionKind::CliqueCover => "cliquecover",
            ReductionKind::KmeansBirch => "kmeans",
            ReductionKind::UflAp => "ufl",
            ReductionKind::L0Ssc => "l0",
            ReductionKind::Kmedian => "kmedian",
        }
    }
}

/// Accepts the short name, the kebab-case serde name and a few spellings
/// such as `clique-cover` or `kmeans-birch`.
impl std::str::FromStr for ReductionKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let key: String = s.trim().to_ascii_lowercase().chars().filter(|c| c.is_ascii_alphanumeric()).collect();
        let kind = match key.as_str() {
            "coloring" | "colouring" => ReductionKind::Coloring,
            "fdcs" => ReductionKind::Fdcs,
            "bisection" | "minbisection" => ReductionKind::Bisection,
            "cliquecover" => ReductionKind::CliqueCover,
            "kmeans" | "kmeansbirch" => ReductionKind::KmeansBirch,
            "ufl" | "uflap" => ReductionKind::UflAp,
            "l0" | "l0ssc" => ReductionKind::L0Ssc,
            "kmedian" => ReductionKind::Kmedian,
            _ => return Err(format!("unknown reduction {s:?}")),
        };
        Ok(kind)
    }
}

impl fmt::Display for ReductionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Certificate for a source problem, produced by a back-map.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum SourceCertificate {
    /// Color of each vertex, `0..kappa`.
    Coloring(Vec<usize>),
    /// Vertex set of a connected dense subgraph.
    Subgraph(Vec<usize>),
    /// One side of a bisection.
    Bisection(Vec<usize>),
    Cliques(Vec<Vec<usize>>),
    /// A clustering of the points.
    Clustering(Partition),
    /// Medoids, one per block.
    Medoids(Vec<usize>),
    OpenFacilities(Vec<usize>),
    /// Sparse solution vector.
    Solution(Vec<Rational>),
}

impl fmt::Display for SourceCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let one_based = |v: &[usize]| v.iter().map(|x| (x + 1).to_string()).collect::<Vec<_>>().join(" ");
        match self {
            SourceCertificate::Coloring(c) => write!(f, "colors=[{}]", one_based(c)),
            SourceCertificate::Subgraph(s) => write!(f, "subgraph=[{}]", one_based(s)),
            SourceCertificate::Bisection(s) => write!(f, "side=[{}]", one_based(s)),
            SourceCertificate::Cliques(cs) => {
                let parts: Vec<String> = cs.iter().map(|c| format!("{{{}}}", one_based(c))).collect();
                write!(f, "cliques={}", parts.join("|"))
            }
            SourceCertificate::Clustering(p) => write!(f, "clusters={p}"),
            SourceCertificate::Medoids(m) => write!(f, "medoids=[{}]", one_based(m)),
            SourceCertificate::OpenFacilities(o) => write!(f, "open=[{}]", one_based(o)),
            SourceCertificate::Solution(z) => {
                let parts: Vec<String> = z.iter().map(ToString::to_string).collect();
                write!(f, "z=[{}]", parts.join(" "))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BackMapError {
    #[error("partition does not match the reduced instance: {0}")]
    PartitionMismatch(String),
    #[error("no block qualifies as the designated witness block")]
    NoDesignatedBlock,
    #[error("a representation matrix is required for this back-map")]
    MissingRepresentation,
}

/// How a UCP witness translates back to a source certificate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BackMap {
    /// Blocks are color classes.
    ColorClasses,
    /// The block of the given size that induces a connected subgraph with at
    /// least `min_edges` edges in the unit-distance graph.
    DesignatedBlock { size: usize, min_edges: usize },
    /// The block containing the first vertex is one side of the bisection.
    BisectionSides,
    /// Blocks are cliques.
    Cliques,
    /// The partition itself is the clustering.
    Identity,
    /// Best medoid of each block.
    Medoids,
    /// Facilities chosen as their block's exemplar are opened. Points
    /// `0..facilities` of the similarity matrix are the facilities.
    OpenFacilities { facilities: usize },
    /// The last data column's coefficients on the two copies of `A` are
    /// added and scattered back to the kept columns of the original `A`.
    SumCopies { kept_columns: Vec<usize>, original_columns: usize },
}

impl fmt::Display for BackMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BackMap::ColorClasses => f.write_str("blocks are color classes"),
            BackMap::DesignatedBlock { size, .. } => write!(f, "the connected block of size {size} is the witness"),
            BackMap::BisectionSides => f.write_str("the two blocks are the bisection"),
            BackMap::Cliques => f.write_str("blocks are cliques"),
            BackMap::Identity => f.write_str("the partition is the clustering"),
            BackMap::Medoids => f.write_str("each block's best medoid is a median"),
            BackMap::OpenFacilities { .. } => f.write_str("facilities chosen as exemplars are opened"),
            BackMap::SumCopies { .. } => f.write_str("z = sum of the target column's coefficients on both copies of A"),
        }
    }
}

impl BackMap {
    /// Applies the back-map to a witness of `instance`. `representation` is
    /// needed only for the sparse-representation reduction.
    pub fn apply(
        &self,
        instance: &UcpDecisionInstance,
        witness: &Partition,
        representation: Option<&RationalMatrix>,
    ) -> Result<SourceCertificate, BackMapError> {
        if witness.n() != instance.n() {
            return Err(BackMapError::PartitionMismatch(format!(
                "{} points, instance has {}",
                witness.n(),
                instance.n()
            )));
        }
        let metric = || instance.metric().ok_or_else(|| BackMapError::PartitionMismatch("expected a metric".into()));
        match self {
            BackMap::ColorClasses => Ok(SourceCertificate::Coloring(witness.labels().to_vec())),
            BackMap::DesignatedBlock { size, min_edges } => {
                let g = crate::model::eps_graph(metric()?, &Rational::one());
                witness
                    .blocks()
                    .into_iter()
                    .find(|b| b.len() == *size && g.is_connected_subset(b) && g.induced_edges(b) >= *min_edges)
                    .map(SourceCertificate::Subgraph)
                    .ok_or(BackMapError::NoDesignatedBlock)
            }
            BackMap::BisectionSides => {
                Ok(SourceCertificate::Bisection(witness.blocks().into_iter().next().unwrap_or_default()))
            }
            BackMap::Cliques => Ok(SourceCertificate::Cliques(witness.blocks())),
            BackMap::Identity => Ok(SourceCertificate::Clustering(witness.clone())),
            BackMap::Medoids => {
                let m = metric()?;
                let medoids = witness
                    .blocks()
                    .iter()
                    .map(|block| {
                        *block
                            .iter()
                            .min_by_key(|&&c| block.iter().map(|&i| m.d(i, c)).sum::<Rational>())
                            .expect("blocks are nonempty")
                    })
                    .collect();
                Ok(SourceCertificate::Medoids(medoids))
            }
            BackMap::OpenFacilities { facilities } => {
                let s = instance
                    .similarity()
                    .ok_or_else(|| BackMapError::PartitionMismatch("expected a similarity matrix".into()))?;
                let mut open: Vec<usize> = witness
                    .blocks()
                    .iter()
                    .map(|block| {
                        // first maximiser: lowest index among ties
                        let mut best = block[0];
                        let mut best_value: Rational = block.iter().map(|&i| s.s(i, best)).sum();
                        for &e in &block[1..] {
                            let value: Rational = block.iter().map(|&i| s.s(i, e)).sum();
                            if value > best_value {
                                best = e;
                                best_value = value;
                            }
                        }
                        best
                    })
                    .filter(|&e| e < *facilities)
                    .collect();
                open.sort_unstable();
                Ok(SourceCertificate::OpenFacilities(open))
            }
            BackMap::SumCopies { kept_columns, original_columns } => {
                let z = representation.ok_or(BackMapError::MissingRepresentation)?;
                let kept = kept_columns.len();
                let target = 2 * kept;
                if z.rows() != target + 1 || z.cols() != target + 1 {
                    return Err(BackMapError::PartitionMismatch(format!(
                        "representation is {}x{}, expected {}x{}",
                        z.rows(),
                        z.cols(),
                        target + 1,
                        target + 1
                    )));
                }
                let mut solution = vec![Rational::zero(); *original_columns];
                for (j, &col) in kept_columns.iter().enumerate() {
                    solution[col] = z.get(j, target) + z.get(kept + j, target);
                }
                Ok(SourceCertificate::Solution(solution))
            }
        }
    }
}

/// Reduced instance plus back-map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionOutput {
    pub instance: UcpDecisionInstance,
    pub back_map: BackMap,
}

/// Dispatches to the reduction for `source`.
pub fn reduce(source: &SourceInstance) -> Result<ReductionOutput, ReductionError> {
    match source {
        SourceInstance::Coloring { graph, colors } => reduce_coloring(graph, *colors),
        SourceInstance::Fdcs { graph, size, min_edges } => reduce_fdcs(graph, *size, *min_edges),
        SourceInstance::Bisection { graph, budget } => reduce_bisection(graph, *budget),
        SourceInstance::CliqueCover { graph, cliques } => reduce_cliquecover(graph, *cliques),
        SourceInstance::Kmeans { points, k, budget } => reduce_kmeans_to_birch(points, *k, budget),
        SourceInstance::Ufl { ufl, budget } => reduce_ufl_to_ap(ufl, budget),
        SourceInstance::L0(l) => reduce_l0_to_ssc(l),
        SourceInstance::Kmedian { metric, k, budget } => embed_kmedian(metric, *k, budget),
    }
}
