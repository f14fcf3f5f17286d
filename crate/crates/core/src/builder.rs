//! Directed co-occurrence networks from lemma streams.
//!
//! Two lemmas are linked when they are adjacent in the filtered stream, so
//! content words separated only by removed stopwords become neighbors.
//! Adjacency runs through sentence ends but never across documents.

use crate::graph::{Directedness, LexNetwork};
use crate::text::TokenStream;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BuildOptions {
    pub break_on_document_boundary: bool,
}

impl BuildOptions {
    /// Only adjacent words are linked.
    pub const WINDOW: usize = 1;
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions {
            break_on_document_boundary: true,
        }
    }
}

pub fn build_cooccurrence(streams: &[TokenStream], opts: BuildOptions) -> LexNetwork {
    let lemmas: Vec<&[String]> = streams.iter().map(|s| s.lemmas.as_slice()).collect();
    build_from_lemmas(&lemmas, opts)
}

pub fn build_from_lemmas<S: AsRef<str>>(streams: &[&[S]], opts: BuildOptions) -> LexNetwork {
    let mut g = LexNetwork::new(Directedness::Directed);
    let mut prev = None;
    for stream in streams {
        if opts.break_on_document_boundary {
            prev = None;
        }
        for lemma in stream.iter() {
            let node = g.intern(lemma.as_ref());
            if let Some(p) = prev {
                // self-loops are refused by the graph
                g.add_link(p, node).expect("interned ids are in range");
            }
            prev = Some(node);
        }
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::NodeId;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::collections::BTreeSet;

    fn labelled_links(g: &LexNetwork) -> BTreeSet<(String, String)> {
        g.links()
            .iter()
            .map(|&(u, v)| (g.label(u).unwrap().to_owned(), g.label(v).unwrap().to_owned()))
            .collect()
    }

    fn pairs(p: &[(&str, &str)]) -> BTreeSet<(String, String)> {
        p.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect()
    }

    #[test]
    fn hand_enumerated_links() {
        let g = build_from_lemmas(&[&["a", "b", "a", "c"][..]], BuildOptions::default());
        assert_eq!((g.n(), g.k()), (3, 3));
        assert_eq!(labelled_links(&g), pairs(&[("a", "b"), ("b", "a"), ("a", "c")]));

        let g = build_from_lemmas(&[&["a", "a", "b"][..]], BuildOptions::default());
        assert_eq!((g.n(), g.k()), (2, 1));
        assert_eq!(labelled_links(&g), pairs(&[("a", "b")]));
    }

    #[test]
    fn single_lemma_is_isolated_node() {
        let g = build_from_lemmas(&[&["solo"][..]], BuildOptions::default());
        assert_eq!((g.n(), g.k()), (1, 0));
        let g = build_from_lemmas::<&str>(&[], BuildOptions::default());
        assert_eq!((g.n(), g.k()), (0, 0));
    }

    #[test]
    fn document_boundaries() {
        let streams: [&[&str]; 2] = [&["a", "b"], &["c", "d"]];
        let g = build_from_lemmas(&streams, BuildOptions::default());
        assert_eq!(labelled_links(&g), pairs(&[("a", "b"), ("c", "d")]));
        let g = build_from_lemmas(
            &streams,
            BuildOptions {
                break_on_document_boundary: false,
            },
        );
        assert_eq!(labelled_links(&g), pairs(&[("a", "b"), ("b", "c"), ("c", "d")]));

        let reversed: [&[&str]; 2] = [&["c", "d"], &["a", "b"]];
        let r = build_from_lemmas(&reversed, BuildOptions::default());
        assert_eq!(
            labelled_links(&r),
            labelled_links(&build_from_lemmas(&streams, BuildOptions::default()))
        );
    }

    #[test]
    fn path_stream_undirects_to_path_graph() {
        let g = build_from_lemmas(&[&["a", "b", "c", "d"][..]], BuildOptions::default()).to_undirected();
        assert_eq!(g.k(), 3);
        let id = |s| g.node_by_label(s).unwrap();
        assert!(g.has_link(id("a"), id("b")) && g.has_link(id("b"), id("c")) && g.has_link(id("c"), id("d")));
    }

    #[test]
    fn random_stream_matches_bigram_scan() {
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        let vocab: Vec<String> = (0..20).map(|i| format!("w{i}")).collect();
        for _ in 0..10 {
            let stream: Vec<String> = (0..500).map(|_| vocab[rng.random_range(0..20)].clone()).collect();
            let mut expected = BTreeSet::new();
            for pair in stream.windows(2) {
                if pair[0] != pair[1] {
                    expected.insert((pair[0].clone(), pair[1].clone()));
                }
            }
            let distinct: BTreeSet<&String> = stream.iter().collect();
            let g = build_from_lemmas(&[&stream[..]], BuildOptions::default());
            assert_eq!(labelled_links(&g), expected);
            assert_eq!(g.n(), distinct.len());
            assert!(g.k() < stream.len());
            assert!(g.nodes().all(|n| g.label(n).is_some()));
            assert_eq!(g.node_by_label(&stream[0]), Some(NodeId(0)));
        }
    }
}
