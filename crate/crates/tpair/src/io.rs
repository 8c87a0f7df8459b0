//! Text and JSON formats.
//!
//! Demand (".dem"): first line `n m`, then m lines `u v mult` with
//! 0-indexed vertices and `u < v`. Host: `complete n` | `bipartite a b` |
//! `explicit n` followed by `u v` edge lines. `#` starts a comment line;
//! all files are UTF-8.

use serde::{Deserialize, Serialize};

use crate::graph::{DemandGraph, HostGraph, PathSystem};
use crate::Error;

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_fields<const K: usize>(line: usize, text: &str) -> Result<[usize; K], Error> {
    let mut out = [0usize; K];
    let mut parts = text.split_whitespace();
    for slot in out.iter_mut() {
        let tok = parts.next().ok_or_else(|| Error::Parse {
            line,
            msg: format!("expected {K} fields, got fewer: {text:?}"),
        })?;
        *slot = tok.parse().map_err(|_| Error::Parse {
            line,
            msg: format!("not a nonnegative integer: {tok:?}"),
        })?;
    }
    if parts.next().is_some() {
        return Err(Error::Parse {
            line,
            msg: format!("trailing fields in {text:?}"),
        });
    }
    Ok(out)
}

pub fn parse_demand(text: &str) -> Result<DemandGraph, Error> {
    let mut lines = content_lines(text);
    let (lno, header) = lines.next().ok_or(Error::Parse {
        line: 0,
        msg: "empty demand file".into(),
    })?;
    let [n, m] = parse_fields(lno, header)?;
    let mut entries = Vec::with_capacity(m);
    for _ in 0..m {
        let (lno, l) = lines.next().ok_or(Error::Parse {
            line: 0,
            msg: format!("expected {m} edge lines"),
        })?;
        let [u, v, mult] = parse_fields(lno, l)?;
        if u >= v {
            return Err(Error::Parse {
                line: lno,
                msg: format!("edges must satisfy u < v, got {u} {v}"),
            });
        }
        entries.push((u, v, mult as u32));
    }
    if let Some((lno, l)) = lines.next() {
        return Err(Error::Parse {
            line: lno,
            msg: format!("unexpected trailing line {l:?}"),
        });
    }
    DemandGraph::new(n, entries)
}

pub fn write_demand(demand: &DemandGraph) -> String {
    let mut out = format!("{} {}\n", demand.vertex_count(), demand.edges().len());
    for e in demand.edges() {
        out.push_str(&format!("{} {} {}\n", e.u, e.v, e.mult));
    }
    out
}

pub fn parse_host(text: &str) -> Result<HostGraph, Error> {
    let mut lines = content_lines(text);
    let (lno, header) = lines.next().ok_or(Error::Parse {
        line: 0,
        msg: "empty host file".into(),
    })?;
    let mut parts = header.split_whitespace();
    let kind = parts.next().unwrap_or_default();
    let rest: Vec<&str> = parts.collect();
    let parse_num = |tok: &str| -> Result<usize, Error> {
        tok.parse().map_err(|_| Error::Parse {
            line: lno,
            msg: format!("not a nonnegative integer: {tok:?}"),
        })
    };
    match kind {
        "complete" | "bipartite" => {
            if lines.next().is_some() {
                return Err(Error::Parse {
                    line: lno,
                    msg: format!("{kind} hosts take no edge lines"),
                });
            }
            match (kind, rest.as_slice()) {
                ("complete", [n]) => Ok(HostGraph::complete(parse_num(n)?)),
                ("bipartite", [a, b]) => {
                    Ok(HostGraph::complete_bipartite(parse_num(a)?, parse_num(b)?))
                }
                _ => Err(Error::Parse {
                    line: lno,
                    msg: format!("malformed host header {header:?}"),
                }),
            }
        }
        "explicit" => {
            let [n] = match rest.as_slice() {
                [n] => [parse_num(n)?],
                _ => {
                    return Err(Error::Parse {
                        line: lno,
                        msg: format!("malformed host header {header:?}"),
                    })
                }
            };
            let mut pairs = Vec::new();
            for (lno, l) in lines {
                let [u, v] = parse_fields(lno, l)?;
                pairs.push((u, v));
            }
            HostGraph::explicit(n, pairs)
        }
        _ => Err(Error::Parse {
            line: lno,
            msg: format!("unknown host kind {kind:?}"),
        }),
    }
}

pub fn write_host(host: &HostGraph) -> String {
    match host {
        HostGraph::Complete { n } => format!("complete {n}\n"),
        HostGraph::CompleteBipartite { a, b } => format!("bipartite {a} {b}\n"),
        HostGraph::Explicit { n, edges } => {
            let mut out = format!("explicit {n}\n");
            for (u, v) in edges {
                out.push_str(&format!("{u} {v}\n"));
            }
            out
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct PathRecord {
    demand: [usize; 2],
    copy: u32,
    path: Vec<usize>,
}

#[derive(Debug, Serialize, Deserialize)]
struct PathsFile {
    paths: Vec<PathRecord>,
}

/// Serializes a path system against the demand it realizes; records carry
/// the (pair, copy) identity so files are meaningful in any order.
pub fn paths_to_json(demand: &DemandGraph, system: &PathSystem) -> Result<String, Error> {
    let instances = demand.instances();
    if instances.len() != system.len() {
        return Err(Error::InvalidInput(format!(
            "path system has {} paths for {} demand instances",
            system.len(),
            instances.len()
        )));
    }
    let file = PathsFile {
        paths: instances
            .iter()
            .zip(system.paths())
            .map(|(inst, path)| PathRecord {
                demand: [inst.u, inst.v],
                copy: inst.copy,
                path: path.clone(),
            })
            .collect(),
    };
    Ok(serde_json::to_string_pretty(&file)?)
}

/// Loads a path system and restores the canonical instance order of
/// `demand`. Every (pair, copy) slot must be present exactly once.
pub fn paths_from_json(text: &str, demand: &DemandGraph) -> Result<PathSystem, Error> {
    let file: PathsFile = serde_json::from_str(text)?;
    let instances = demand.instances();
    if file.paths.len() != instances.len() {
        return Err(Error::InvalidInput(format!(
            "file has {} paths for {} demand instances",
            file.paths.len(),
            instances.len()
        )));
    }
    let mut slots: Vec<Option<Vec<usize>>> = vec![None; instances.len()];
    for rec in file.paths {
        let slot = instances
            .iter()
            .position(|i| [i.u, i.v] == rec.demand && i.copy == rec.copy)
            .ok_or_else(|| {
                Error::InvalidInput(format!(
                    "no demand instance ({}, {}) copy {}",
                    rec.demand[0], rec.demand[1], rec.copy
                ))
            })?;
        if slots[slot].replace(rec.path).is_some() {
            return Err(Error::InvalidInput(format!(
                "duplicate path for instance ({}, {}) copy {}",
                rec.demand[0], rec.demand[1], rec.copy
            )));
        }
    }
    Ok(PathSystem::new(
        slots.into_iter().map(|p| p.unwrap()).collect(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::triangle_demand;

    #[test]
    fn demand_round_trip_is_byte_exact() {
        let d = triangle_demand(6, 4).unwrap();
        let text = write_demand(&d);
        let parsed = parse_demand(&text).unwrap();
        assert_eq!(parsed, d);
        assert_eq!(write_demand(&parsed), text);
    }

    #[test]
    fn demand_parse_with_comments() {
        let text = "# triangle on three vertices\n3 3\n0 1 1\n# middle\n0 2 1\n1 2 1\n";
        let d = parse_demand(text).unwrap();
        assert_eq!(d, triangle_demand(3, 2).unwrap());
    }

    #[test]
    fn demand_parse_rejects_malformed() {
        assert!(parse_demand("").is_err());
        assert!(parse_demand("3 1\n1 0 1\n").is_err()); // u >= v
        assert!(parse_demand("3 2\n0 1 1\n").is_err()); // short
        assert!(parse_demand("3 1\n0 1 1\n0 2 1\n").is_err()); // trailing
        assert!(parse_demand("3 one\n").is_err());
    }

    #[test]
    fn host_formats() {
        assert_eq!(parse_host("complete 6\n").unwrap(), HostGraph::complete(6));
        assert_eq!(
            parse_host("# host\nbipartite 3 4\n").unwrap(),
            HostGraph::complete_bipartite(3, 4)
        );
        let h = parse_host("explicit 4\n0 1\n2 3\n").unwrap();
        assert_eq!(h.edge_count(), 2);
        assert_eq!(parse_host(&write_host(&h)).unwrap(), h);
        assert!(parse_host("ring 5\n").is_err());
        assert!(parse_host("complete 5\n0 1\n").is_err());
    }

    #[test]
    fn paths_json_round_trip_restores_canonical_order() {
        let d = triangle_demand(3, 2).unwrap();
        let system = PathSystem::new(vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
        let json = paths_to_json(&d, &system).unwrap();
        let loaded = paths_from_json(&json, &d).unwrap();
        assert_eq!(loaded, system);

        // Shuffled record order still lands in canonical slots.
        let mut file: serde_json::Value = serde_json::from_str(&json).unwrap();
        file["paths"].as_array_mut().unwrap().reverse();
        let loaded = paths_from_json(&file.to_string(), &d).unwrap();
        assert_eq!(loaded, system);
    }

    #[test]
    fn paths_json_rejects_unknown_and_duplicate_instances() {
        let d = triangle_demand(3, 2).unwrap();
        let bad = r#"{"paths":[{"demand":[0,1],"copy":1,"path":[0,1]},
                      {"demand":[0,2],"copy":0,"path":[0,2]},
                      {"demand":[1,2],"copy":0,"path":[1,2]}]}"#;
        assert!(paths_from_json(bad, &d).is_err());
        let dup = r#"{"paths":[{"demand":[0,1],"copy":0,"path":[0,1]},
                      {"demand":[0,1],"copy":0,"path":[0,2]},
                      {"demand":[1,2],"copy":0,"path":[1,2]}]}"#;
        assert!(paths_from_json(dup, &d).is_err());
    }
}
