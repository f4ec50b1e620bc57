mod common;

use namestack::layout::{flat_line_count, stack_bbox_aligned};
use namestack::render::{emit_html, emit_latex, emit_svg, emit_text, RenderOptions};
use namestack::stack::split_names;
use namestack::{
    build_stack, circular_layout, effective_alpha, effective_alpha_exact, format_full_names,
    format_name, format_names, grouped_stacks, measure, parse_name_list, parse_pattern, Align,
    FontMetrics, Opacity, BIBLIOGRAPHY_PATTERN,
};
use num_traits::ToPrimitive;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn name_word() -> impl Strategy<Value = String> {
    "[A-Z][a-z]{1,8}"
}

fn plain_name() -> impl Strategy<Value = String> {
    prop::collection::vec(name_word(), 1..4).prop_map(|w| w.join(" "))
}

fn author_field() -> impl Strategy<Value = (u64, usize)> {
    (any::<u64>(), 1usize..20)
}

proptest! {
    #[test]
    fn author_lists_round_trip((seed, len) in author_field()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (_, _, field) = common::random_list(&mut rng, len);
        let list = parse_name_list(&field).unwrap();
        let again = parse_name_list(&list.to_string()).unwrap();
        prop_assert_eq!(again, list);
    }

    #[test]
    fn name_count_matches_separators((seed, len) in author_field()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (_, others, field) = common::random_list(&mut rng, len);
        let list = parse_name_list(&field).unwrap();
        let separators = field.matches(" and ").count();
        prop_assert_eq!(list.names.len(), 1 + separators - usize::from(others));
        prop_assert_eq!(list.ends_with_others, others);
    }

    #[test]
    fn parsing_preserves_order(names in prop::collection::vec(plain_name(), 1..12), seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        let mut shuffled = names.clone();
        shuffled.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        let list = parse_name_list(&shuffled.join(" and ")).unwrap();
        let lasts: Vec<String> = list.names.iter().map(|n| n.last.join(" ")).collect();
        let expected: Vec<String> = shuffled
            .iter()
            .map(|n| n.rsplit(' ').next().unwrap().to_string())
            .collect();
        prop_assert_eq!(lasts, expected);
    }

    #[test]
    fn full_names_have_one_separator_fewer_than_names((seed, len) in author_field()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (_, _, field) = common::random_list(&mut rng, len);
        let list = parse_name_list(&field).unwrap();
        prop_assert_eq!(format_full_names(&list).matches("; ").count(), list.num_names() - 1);
    }

    #[test]
    fn style_functions_match_transcription((seed, len) in author_field()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (parts, others, field) = common::random_list(&mut rng, len);
        let list = parse_name_list(&field).unwrap();
        let pattern = parse_pattern(BIBLIOGRAPHY_PATTERN).unwrap();
        for (name, truth) in list.names.iter().zip(&parts) {
            prop_assert_eq!(format_name(name, &pattern), common::bst_long_name(truth));
        }
        prop_assert_eq!(format_names(&list, &pattern), common::bst_format_names(&parts, others));
        prop_assert_eq!(format_full_names(&list), common::bst_format_full_names(&parts, others));
        // deterministic
        prop_assert_eq!(format_names(&list, &pattern), format_names(&list, &pattern));
    }

    #[test]
    fn reveal_text_splits_back(names in prop::collection::vec(plain_name(), 1..20)) {
        let stack = build_stack(&names, None).unwrap();
        prop_assert_eq!(split_names(stack.actual_text()), names.clone());
        prop_assert_eq!(stack.tooltip_text(), stack.actual_text());
        prop_assert_eq!(emit_text(&stack), stack.actual_text());
    }

    #[test]
    fn opacity_stays_in_range(n in 1u64..1000, d in 1u64..1000) {
        match Opacity::from_ratio(n, d) {
            Ok(op) => {
                prop_assert!(n <= d);
                let stack = build_stack(&["A"], Some(op)).unwrap();
                prop_assert!(stack.opacity().value() > 0.0 && stack.opacity().value() <= 1.0);
            }
            Err(_) => prop_assert!(n > d),
        }
    }

    #[test]
    fn overlap_alpha_increases(n in 1u64..100, d in 2u64..100, layers in 1u32..80) {
        prop_assume!(n < d);
        let op = Opacity::from_ratio(n, d).unwrap();
        let lower = effective_alpha_exact(layers, op).unwrap();
        let upper = effective_alpha_exact(layers + 1, op).unwrap();
        prop_assert!(upper > lower);
        prop_assert!(effective_alpha(layers + 1, op).unwrap() >= effective_alpha(layers, op).unwrap());
    }

    #[test]
    fn groups_flatten_to_input(groups in prop::collection::vec(prop::collection::vec(plain_name(), 1..5), 1..5)) {
        let g = grouped_stacks(&groups, None).unwrap();
        let flat: Vec<String> = groups.concat();
        prop_assert_eq!(g.flatten(), flat.iter().map(String::as_str).collect::<Vec<_>>());
        prop_assert_eq!(split_names(g.tooltip_text()), flat);
    }

    #[test]
    fn appending_never_narrows(s in ".{0,30}", c in any::<char>()) {
        let m = FontMetrics::builtin();
        let mut longer = s.clone();
        longer.push(c);
        prop_assert!(measure(&longer, &m, 10.0) >= measure(&s, &m, 10.0));
    }

    #[test]
    fn bbox_is_widest_name(names in prop::collection::vec(".{0,20}", 1..30), center in any::<bool>()) {
        let m = FontMetrics::builtin();
        let align = if center { Align::Center } else { Align::Left };
        let l = stack_bbox_aligned(&names, &m, 12.0, align);
        let widest = names.iter().map(|n| measure(n, &m, 12.0)).fold(0.0, f64::max);
        prop_assert_eq!(l.bbox_width, widest);
        prop_assert_eq!(l.bbox_height, m.line_height_at(12.0));
        for b in &l.boxes {
            prop_assert!(b.x >= 0.0 && b.x + b.width <= l.bbox_width + 1e-9);
        }
    }

    #[test]
    fn circle_spacing_and_upright(n in 2usize..40, radius in 0.1f64..500.0, rotation in -720.0f64..720.0) {
        let names: Vec<String> = (0..n).map(|i| format!("Name {i}")).collect();
        let c = circular_layout(&names, radius, rotation, true, &FontMetrics::builtin(), 10.0).unwrap();
        let step = 360.0 / n as f64;
        for w in c.placements.windows(2) {
            prop_assert!((w[1].angle - w[0].angle - step).abs() <= 1e-9);
        }
        for p in &c.placements {
            prop_assert!(p.up.1 >= 0.0, "{:?}", p);
            prop_assert!((p.x.hypot(p.y) - radius).abs() <= 1e-9 * radius.max(1.0));
        }
    }

    #[test]
    fn backends_are_deterministic(names in prop::collection::vec(plain_name(), 1..8)) {
        let stack = build_stack(&names, None).unwrap();
        let opts = RenderOptions::default();
        let m = FontMetrics::builtin();
        prop_assert_eq!(emit_latex(&stack, &opts).unwrap(), emit_latex(&stack, &opts).unwrap());
        prop_assert_eq!(emit_html(&stack, &opts), emit_html(&stack, &opts));
        prop_assert_eq!(emit_svg(&stack, &m, &opts), emit_svg(&stack, &m, &opts));
    }
}

#[test]
fn alpha_approaches_one() {
    for op in ["1/2", "2/3", "0.9", "0.1"] {
        let op: Opacity = op.parse().unwrap();
        let a64 = effective_alpha_exact(64, op).unwrap().to_f64().unwrap();
        if op.value() >= 0.5 {
            assert!((1.0 - a64).abs() <= 1e-9, "{op}: {a64}");
        }
        let mut prev = 0.0;
        for n in 1..=64 {
            let a = effective_alpha(n, op).unwrap();
            assert!(a >= prev);
            prev = a;
        }
    }
}

#[test]
fn space_savings_with_builtin_metrics() {
    let m = FontMetrics::builtin();
    let names: Vec<String> = (0..274).map(|i| format!("A. B. Name{i}")).collect();
    let column = 240.0;
    let stacked = stack_bbox_aligned(&names, &m, 10.0, Align::Left);
    assert_eq!(stacked.bbox_height, m.line_height_at(10.0));
    let flat = flat_line_count(&names, &m, 10.0, column);
    let avg = names.iter().map(|n| measure(n, &m, 10.0)).sum::<f64>() / names.len() as f64;
    let c = avg / column;
    assert!(flat as f64 >= names.len() as f64 * c);
}
