//! Bundled example networks.

use crate::graph::{parse_edge_list, Graph, GraphError, NodeClassMap};

/// Zachary's karate club, nodes `1..=34`, 78 edges.
pub const KARATE_EDGE_LIST: &str = include_str!("../data/karate.txt");

/// Administrators of the karate club, who led the two factions.
pub const KARATE_LEADERS: [&str; 2] = ["1", "34"];

pub const ROLE_LEADER: &str = "leader";
pub const ROLE_BOTH: &str = "both-leaders";
pub const ROLE_ONE: &str = "one-leader";
pub const ROLE_NEITHER: &str = "no-leader";

pub fn karate_club() -> Graph {
    parse_edge_list(KARATE_EDGE_LIST).expect("bundled karate edge list parses")
}

/// Role classes relative to two leader nodes: the leaders themselves, nodes
/// adjacent to both, to exactly one, and to neither.
pub fn leader_role_classes(g: &Graph, leaders: [&str; 2]) -> Result<NodeClassMap, GraphError> {
    let mut leader_index = [0usize; 2];
    for (slot, id) in leader_index.iter_mut().zip(leaders) {
        *slot = g.index_of(id).ok_or_else(|| GraphError::UnknownClassNode {
            line: 0,
            id: id.to_owned(),
        })?;
    }
    let mut classes = NodeClassMap::new();
    for v in 0..g.node_count() {
        let class = if leader_index.contains(&v) {
            ROLE_LEADER
        } else {
            match leader_index.iter().filter(|&&l| g.has_edge(v, l)).count() {
                2 => ROLE_BOTH,
                1 => ROLE_ONE,
                _ => ROLE_NEITHER,
            }
        };
        classes.insert(g, g.node_id(v), class)?;
    }
    Ok(classes)
}

pub fn karate_role_classes() -> NodeClassMap {
    leader_role_classes(&karate_club(), KARATE_LEADERS).expect("leaders are karate nodes")
}

/// `id,class` CSV with a header, rows in node order.
pub fn classes_csv(g: &Graph, classes: &NodeClassMap) -> String {
    let mut out = String::from("id,class\n");
    for id in g.node_ids() {
        if let Some(class) = classes.class_of(id) {
            out.push_str(id);
            out.push(',');
            out.push_str(class);
            out.push('\n');
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn karate_shape() {
        let g = karate_club();
        assert_eq!(g.node_count(), 34);
        assert_eq!(g.edge_count(), 78);
        assert_eq!(g.degree(g.index_of("34").unwrap()), Ok(17));
        assert_eq!(g.degree(g.index_of("1").unwrap()), Ok(16));
        g.validate().unwrap();
    }

    #[test]
    fn karate_roles() {
        let g = karate_club();
        let classes = karate_role_classes();
        assert_eq!(classes.members(&g, ROLE_LEADER).len(), 2);
        let both: Vec<&str> = classes
            .members(&g, ROLE_BOTH)
            .into_iter()
            .map(|v| g.node_id(v))
            .collect();
        let mut both_sorted = both.clone();
        both_sorted.sort_by_key(|id| id.parse::<u32>().unwrap());
        assert_eq!(both_sorted, ["9", "14", "20", "32"]);
        let mut neither: Vec<&str> = classes
            .members(&g, ROLE_NEITHER)
            .into_iter()
            .map(|v| g.node_id(v))
            .collect();
        neither.sort_by_key(|id| id.parse::<u32>().unwrap());
        assert_eq!(neither, ["17", "25", "26"]);
        assert_eq!(classes.members(&g, ROLE_ONE).len(), 34 - 2 - 4 - 3);
    }

    #[test]
    fn shipped_role_file_matches_the_generator() {
        let g = karate_club();
        let shipped = include_str!("../data/karate_roles.csv");
        assert_eq!(shipped, classes_csv(&g, &karate_role_classes()));
    }
}
