use std::ffi::CStr;
use std::path::Path;
use std::process::Command;
use std::ptr;

use higher_nash_ffi::*;

fn last_error() -> String {
    unsafe { CStr::from_ptr(hn_last_error_message()) }
        .to_string_lossy()
        .into_owned()
}

unsafe fn rays(fan: *const HnFan) -> Vec<(i64, i64)> {
    let mut count = 0usize;
    assert_eq!(hn_fan_ray_count(fan, &mut count), HnStatus::Ok);
    (0..count)
        .map(|i| {
            let (mut x, mut y) = (0i64, 0i64);
            assert_eq!(hn_fan_ray(fan, i, &mut x, &mut y), HnStatus::Ok);
            (x, y)
        })
        .collect()
}

#[test]
fn family_fan_round_trip() {
    unsafe {
        let mut fan = ptr::null_mut();
        assert_eq!(hn_family_fan_new(4, &mut fan), HnStatus::Ok);
        assert!(!fan.is_null());
        assert_eq!(last_error(), "");
        let r = rays(fan);
        assert_eq!(r.first(), Some(&(0, 1)));
        assert_eq!(r.last(), Some(&(5, -4)));
        for k in 1..=4i64 {
            assert!(r.contains(&(k, 1 - k)));
        }

        let mut res = ptr::null_mut();
        assert_eq!(hn_minimal_resolution_fan_new(4, &mut res), HnStatus::Ok);
        let mut refines = false;
        assert_eq!(hn_fan_refines(fan, res, &mut refines), HnStatus::Ok);
        assert!(refines);

        let (mut has, mut x, mut y) = (false, 0i64, 0i64);
        assert_eq!(hn_fan_cone_tag(fan, 0, &mut has, &mut x, &mut y), HnStatus::Ok);
        assert!(has);
        assert_eq!(
            hn_fan_cone_tag(fan, 999, &mut has, &mut x, &mut y),
            HnStatus::InvalidArgument
        );
        assert!(last_error().contains("out of range"));

        let mut json = ptr::null_mut();
        assert_eq!(hn_fan_to_json(fan, &mut json), HnStatus::Ok);
        let text = CStr::from_ptr(json).to_str().unwrap().to_owned();
        hn_string_free(json);
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["n"], 4);

        hn_fan_free(fan);
        hn_fan_free(res);
        hn_fan_free(ptr::null_mut());
    }
}

#[test]
fn oracle_fan_and_cost_refusal() {
    unsafe {
        let mut fan = ptr::null_mut();
        assert_eq!(hn_oracle_fan_new(2, false, &mut fan), HnStatus::Ok);
        let r = rays(fan);
        assert!(r.contains(&(1, 0)) && r.contains(&(2, -1)));
        hn_fan_free(fan);

        let mut fan = ptr::null_mut();
        assert_eq!(hn_oracle_fan_new(4, false, &mut fan), HnStatus::CostRefused);
        assert!(fan.is_null());
        assert!(last_error().contains("1391975640"));
    }
}

#[test]
fn eta_k_buffer_handling() {
    unsafe {
        let mut len = 0usize;
        assert_eq!(hn_eta_k(6, 3, ptr::null_mut(), 0, &mut len), HnStatus::BufferTooSmall);
        assert_eq!(len, 7);
        let mut buf = vec![0u32; len];
        assert_eq!(hn_eta_k(6, 3, buf.as_mut_ptr(), buf.len(), &mut len), HnStatus::Ok);
        assert_eq!(buf, [1, 0, 1, 1, 1, 1, 2]);
        assert_eq!(
            hn_eta_k(6, 7, buf.as_mut_ptr(), buf.len(), &mut len),
            HnStatus::InvalidArgument
        );
        assert_eq!(
            hn_eta_k(6, 3, buf.as_mut_ptr(), buf.len(), ptr::null_mut()),
            HnStatus::NullPointer
        );
    }
}

#[test]
fn membership_and_verification() {
    unsafe {
        // J_{eta_1} for n = 1 maps onto {(1,0), (1,2)}.
        let j = [1u32, 0, 0, 0, 0, 1];
        let mut inside = false;
        assert_eq!(hn_is_in_s(1, j.as_ptr(), 2, &mut inside), HnStatus::Ok);
        assert!(inside);
        let bad = [1u32, 0, 0, 1, 0, 0];
        assert_eq!(hn_is_in_s(1, bad.as_ptr(), 2, &mut inside), HnStatus::InvalidArgument);
        assert_eq!(hn_is_in_s(1, j.as_ptr(), 1, &mut inside), HnStatus::InvalidArgument);

        let mut passed = false;
        let mut json = ptr::null_mut();
        assert_eq!(hn_verify_main(7, 4, &mut passed, &mut json), HnStatus::Ok);
        assert!(passed);
        let v: serde_json::Value = serde_json::from_str(CStr::from_ptr(json).to_str().unwrap()).unwrap();
        hn_string_free(json);
        assert_eq!(v["k"], 4);
        assert_eq!(hn_verify_main(7, 4, &mut passed, ptr::null_mut()), HnStatus::Ok);
        assert_eq!(
            hn_verify_main(0, 1, &mut passed, ptr::null_mut()),
            HnStatus::InvalidArgument
        );
    }
}

#[test]
fn null_pointers_are_rejected() {
    unsafe {
        assert_eq!(hn_family_fan_new(2, ptr::null_mut()), HnStatus::NullPointer);
        assert_eq!(hn_fan_ray_count(ptr::null(), &mut 0), HnStatus::NullPointer);
        assert_eq!(
            hn_fan_refines(ptr::null(), ptr::null(), &mut false),
            HnStatus::NullPointer
        );
        assert_eq!(hn_fan_to_json(ptr::null(), &mut ptr::null_mut()), HnStatus::NullPointer);
        assert_eq!(hn_is_in_s(1, ptr::null(), 0, &mut false), HnStatus::NullPointer);
        assert_eq!(
            hn_verify_main(1, 1, ptr::null_mut(), ptr::null_mut()),
            HnStatus::NullPointer
        );
        assert!(!last_error().is_empty());
    }
}

#[test]
fn header_compiles_as_c() {
    let header = Path::new(env!("CARGO_MANIFEST_DIR")).join("include/higher_nash.h");
    let text = std::fs::read_to_string(&header).unwrap();
    for name in [
        "hn_family_fan_new",
        "hn_fan_free",
        "hn_eta_k",
        "HN_STATUS_COST_REFUSED",
        "typedef struct hn_fan hn_fan",
    ] {
        assert!(text.contains(name), "header lacks {name}");
    }
    let Ok(status) = Command::new("cc")
        .args(["-fsyntax-only", "-Wall", "-Werror", "-x", "c"])
        .arg(&header)
        .status()
    else {
        eprintln!("no C compiler found; syntax check skipped");
        return;
    };
    assert!(status.success());
}
