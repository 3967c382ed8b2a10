use std::path::{Path, PathBuf};

use clap::Args;
use cutforge::cuts::{
    edge_cut, single_vertex_cut, triple_edge_cut, uniform_random_cut, ClebschPreset, RootedCutDescriptor,
};
use cutforge::graphs::{
    blow_up, cycle, from_graph6, named_graph, path, random_triangle_free, read_graph6_lines, star, BlowUpSpec,
    SmallGraph,
};
use cutforge::rational::parse_q;
use cutforge::{Error, Result, Q};

/// Where the input graph comes from; exactly one is required.
#[derive(Args, Debug, Clone)]
#[group(id = "source", required = true, multiple = false)]
pub struct GraphSource {
    /// Named graph (c5, petersen, clebsch, cN, pN) or a graph6 string.
    #[arg(long)]
    pub graph: Option<String>,
    /// File whose first graph6 line is used.
    #[arg(long)]
    pub graph_file: Option<PathBuf>,
    /// Generator: random:N:P (needs --seed), c5-blowup:A,B,C,D,E, cycle:N, path:N, star:N, empty:N.
    #[arg(long)]
    pub generate: Option<String>,
}

/// A failure caused by the command line rather than by the computation.
#[derive(Debug)]
pub struct Usage(pub String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

pub type CliResult<T> = std::result::Result<T, Box<dyn std::error::Error>>;

fn usage<T>(msg: impl Into<String>) -> CliResult<T> {
    Err(Box::new(Usage(msg.into())))
}

pub fn graph_token(text: &str) -> Result<SmallGraph> {
    match named_graph(text) {
        Some(g) => Ok(g),
        None => from_graph6(text),
    }
}

fn count(spec: &str, text: &str) -> CliResult<usize> {
    text.parse().or_else(|_| usage(format!("bad size in generator {spec:?}")))
}

impl GraphSource {
    pub fn describe(&self) -> String {
        if let Some(g) = &self.graph {
            g.clone()
        } else if let Some(p) = &self.graph_file {
            p.display().to_string()
        } else {
            self.generate.clone().unwrap_or_default()
        }
    }

    pub fn load(&self, seed: Option<u64>) -> CliResult<SmallGraph> {
        if let Some(g) = &self.graph {
            return Ok(graph_token(g)?);
        }
        if let Some(p) = &self.graph_file {
            return Ok(first_graph(p)?);
        }
        let spec = self.generate.as_deref().unwrap_or_default();
        let (kind, args) = spec.split_once(':').unwrap_or((spec, ""));
        Ok(match kind {
            "random" => {
                let Some(seed) = seed else {
                    return usage("random graphs need --seed");
                };
                let (n, p) = args.split_once(':').unwrap_or((args, "0.5"));
                let p = match parse_q(p) {
                    Ok(p) => cutforge::rational::to_f64(&p),
                    Err(_) => return usage(format!("bad edge probability in {spec:?}")),
                };
                random_triangle_free(count(spec, n)?, p, seed)?
            }
            "c5-blowup" => {
                let sizes = args.split(',').map(|s| count(spec, s)).collect::<CliResult<Vec<_>>>()?;
                if sizes.len() != 5 {
                    return usage("c5-blowup needs five class sizes");
                }
                blow_up(&BlowUpSpec::new(cycle(5), sizes))?
            }
            "cycle" => cycle(count(spec, args)?.max(3)),
            "path" => path(count(spec, args)?.max(1)),
            "star" => star(count(spec, args)?),
            "empty" => SmallGraph::empty(count(spec, args)?)?,
            _ => return usage(format!("unknown generator {spec:?}")),
        })
    }
}

fn first_graph(path: &Path) -> Result<SmallGraph> {
    let text = std::fs::read_to_string(path)?;
    read_graph6_lines(&text)?
        .into_iter()
        .next()
        .ok_or_else(|| Error::InvalidArgument(format!("{} holds no graph", path.display())))
}

pub fn parse_probs(text: &str) -> Result<Vec<Q>> {
    text.split(',').map(|s| parse_q(s.trim())).collect()
}

pub fn parse_vertices(text: &str) -> CliResult<Vec<usize>> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    text.split(',')
        .map(|s| s.trim().parse().or_else(|_| usage(format!("bad vertex list {text:?}"))))
        .collect()
}

/// A preset name or a path to a descriptor JSON file.
pub fn load_cut(spec: &str) -> CliResult<RootedCutDescriptor> {
    Ok(match spec {
        "single-vertex" => single_vertex_cut(),
        "edge" => edge_cut(),
        "triple-edge" => triple_edge_cut(),
        "uniform" => uniform_random_cut(),
        "clebsch-025" => ClebschPreset::ZeroTwoFive.descriptor(),
        "clebsch-125" => ClebschPreset::OneTwoFive.descriptor(),
        path => {
            let text = std::fs::read_to_string(path)
                .or_else(|_| usage(format!("{path:?} is neither a cut preset nor a readable file")))?;
            serde_json::from_str(&text)?
        }
    })
}
