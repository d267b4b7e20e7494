use blueprint_core::builtins;
use blueprint_core::{Blueprint, CoreError};

#[test]
fn tree12_shape() {
    let b = builtins::tree12();
    assert_eq!(b.num_states(), 2);
    assert_eq!(b.num_gens(), 3);
    assert!(b.relations.is_empty());
}

#[test]
fn minimal_free_monoid_is_valid() {
    let b = Blueprint::parse(
        "[states]\nnames=[\"o\"]\n[[generators]]\nname=\"a\"\ninitial=\"o\"\nterminal=[\"o\"]\n",
    )
    .unwrap();
    assert_eq!(b.num_gens(), 1);
    assert!(b.relations.is_empty());
}

#[test]
fn empty_terminal_rejected() {
    let err = Blueprint::parse(
        "[states]\nnames=[\"o\"]\n[[generators]]\nname=\"a\"\ninitial=\"o\"\nterminal=[]\n",
    )
    .unwrap_err();
    assert_eq!(err, CoreError::EmptyTerminal("a".into()));
}

#[test]
fn inconsistent_relation_rejected() {
    let src = r#"
[states]
names = ["0", "1"]
[[generators]]
name = "a"
initial = "0"
terminal = ["0"]
[[generators]]
name = "b"
initial = "1"
terminal = ["1"]
[relations]
pairs = [["a b", ""]]
"#;
    assert_eq!(Blueprint::parse(src).unwrap_err(), CoreError::InconsistentRelation { index: 0 });
}

#[test]
fn relation_sides_need_equal_initial_state() {
    let src = r#"
[states]
names = ["0", "1"]
[[generators]]
name = "a"
initial = "0"
terminal = ["0"]
[[generators]]
name = "b"
initial = "1"
terminal = ["1"]
[relations]
pairs = [["a", "b"]]
"#;
    assert_eq!(Blueprint::parse(src).unwrap_err(), CoreError::RelationInitialMismatch { index: 0 });
}

#[test]
fn unknown_and_duplicate_labels() {
    let dup = "[states]\nnames=[\"o\"]\n[[generators]]\nname=\"a\"\ninitial=\"o\"\nterminal=[\"o\"]\n[[generators]]\nname=\"a\"\ninitial=\"o\"\nterminal=[\"o\"]\n";
    assert_eq!(Blueprint::parse(dup).unwrap_err(), CoreError::DuplicateGenerator("a".into()));
    let unk = "[states]\nnames=[\"o\"]\n[[generators]]\nname=\"a\"\ninitial=\"q\"\nterminal=[\"o\"]\n";
    assert_eq!(Blueprint::parse(unk).unwrap_err(), CoreError::UnknownState("q".into()));
    let b = builtins::z();
    assert!(matches!(b.parse_word("a x"), Err(CoreError::UnknownGenerator(_))));
}

#[test]
fn consistency_of_words() {
    let t = builtins::tree12();
    assert!(t.check_consistent_word(&[]).unwrap());
    assert!(t.check_consistent_word(&t.parse_word("s l").unwrap()).unwrap());
    let t3 = builtins::table3();
    assert!(!t3.check_consistent_word(&t3.parse_word("a b").unwrap()).unwrap());
    assert!(t.check_consistent_word(&[7]).is_err());
}

#[test]
fn serialization_round_trip_and_digest() {
    for name in ["z", "z2", "free1", "tree12", "table3", "hyperbolic"] {
        let b = builtins::by_name(name).unwrap();
        let again = Blueprint::parse(&b.to_toml_string()).unwrap();
        assert_eq!(again, b, "{name}");
        assert_eq!(again.digest(), b.digest());
    }
    assert_ne!(builtins::z().digest(), builtins::z2().digest());
}

#[test]
fn quotient_unions_relations() {
    let f = builtins::free1();
    let a = f.parse_word("a").unwrap();
    let q = f.quotient(vec![(vec![a[0]; 2], vec![])]).unwrap();
    assert_eq!(q.relations.len(), 1);
    assert_eq!(q.generators, f.generators);
}
