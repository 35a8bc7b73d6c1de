use std::ffi::{CStr, CString};
use std::ptr;

use spantree_ffi::*;

fn last_error() -> String {
    let p = sp_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn k4_through_the_abi() {
    let edges: [usize; 12] = [0, 1, 0, 2, 0, 3, 1, 2, 1, 3, 2, 3];
    let mut g = ptr::null_mut();
    unsafe {
        assert_eq!(
            sp_graph_from_edges(4, edges.as_ptr(), 6, &mut g),
            SpStatus::Ok
        );
        assert!(sp_last_error().is_null());
        let (mut n, mut m) = (0, 0);
        assert_eq!(sp_graph_counts(g, &mut n, &mut m), SpStatus::Ok);
        assert_eq!((n, m), (4, 6));
        let mut s = 0;
        assert_eq!(sp_sigma(g, &mut s), SpStatus::Ok);
        assert_eq!(s, 2);
        let mut k = 0;
        assert_eq!(sp_edge_connectivity(g, &mut k), SpStatus::Ok);
        assert_eq!(k, 3);
        let mut l2 = 0.0;
        assert_eq!(sp_lambda2(g, &mut l2), SpStatus::Ok);
        assert!((l2 + 1.0).abs() < 1e-12);

        let mut len = 0;
        assert_eq!(
            sp_spectrum(g, ptr::null_mut(), 0, &mut len),
            SpStatus::BufferTooSmall
        );
        assert_eq!(len, 4);
        let mut buf = vec![0.0; len];
        assert_eq!(
            sp_spectrum(g, buf.as_mut_ptr(), buf.len(), &mut len),
            SpStatus::Ok
        );
        assert!((buf[0] - 3.0).abs() < 1e-12 && buf[1..].iter().all(|x| (x + 1.0).abs() < 1e-12));

        let mut json = ptr::null_mut();
        assert_eq!(sp_analyze_json(g, &mut json), SpStatus::Ok);
        let text = CStr::from_ptr(json).to_str().unwrap();
        assert!(text.contains("\"kappa_prime\": 3"));
        sp_string_free(json);
        sp_graph_free(g);
    }
}

#[test]
fn families_and_errors() {
    let mut g = ptr::null_mut();
    unsafe {
        assert_eq!(sp_graph_build_gd(3, &mut g), SpStatus::InvalidArgument);
        assert!(g.is_null());
        assert!(last_error().contains("d"));

        assert_eq!(sp_graph_build_hd(6, &mut g), SpStatus::Ok);
        let mut s = 0;
        assert_eq!(sp_sigma(g, &mut s), SpStatus::Ok);
        assert_eq!(s, 2);
        sp_graph_free(g);

        let loops: [usize; 2] = [1, 1];
        let mut h = ptr::null_mut();
        assert_eq!(
            sp_graph_from_edges(3, loops.as_ptr(), 1, &mut h),
            SpStatus::Construction
        );
        assert_eq!(
            sp_graph_from_edges(3, ptr::null(), 1, &mut h),
            SpStatus::NullPointer
        );
        assert_eq!(
            sp_graph_from_edges(3, ptr::null(), 0, ptr::null_mut()),
            SpStatus::NullPointer
        );
        assert_eq!(sp_sigma(ptr::null(), &mut s), SpStatus::NullPointer);
        assert!(last_error().contains("null"));

        assert_eq!(sp_graph_from_edges(1, ptr::null(), 0, &mut h), SpStatus::Ok);
        let mut l2 = 0.0;
        assert_eq!(sp_lambda2(h, &mut l2), SpStatus::InvalidArgument);
        sp_graph_free(h);
        sp_graph_free(ptr::null_mut());
        sp_string_free(ptr::null_mut());
    }
}

#[test]
fn read_reports_parse_errors() {
    let dir = std::env::temp_dir().join(format!("spantree-ffi-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let good = dir.join("c5.el");
    std::fs::write(&good, "5 5\n0 1\n1 2\n2 3\n3 4\n4 0\n").unwrap();
    let bad = dir.join("bad.el");
    std::fs::write(&bad, "5 1\n0 7\n").unwrap();
    let mut g = ptr::null_mut();
    unsafe {
        let p = CString::new(good.to_str().unwrap()).unwrap();
        assert_eq!(sp_graph_read(p.as_ptr(), &mut g), SpStatus::Ok);
        let mut s = 0;
        assert_eq!(sp_sigma(g, &mut s), SpStatus::Ok);
        assert_eq!(s, 1);
        sp_graph_free(g);

        let p = CString::new(bad.to_str().unwrap()).unwrap();
        assert_eq!(sp_graph_read(p.as_ptr(), &mut g), SpStatus::Parse);
        assert!(last_error().starts_with("line 2"));
        let p = CString::new(dir.join("missing.el").to_str().unwrap()).unwrap();
        assert_eq!(sp_graph_read(p.as_ptr(), &mut g), SpStatus::Io);
    }
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn version_is_static() {
    let v = unsafe { CStr::from_ptr(sp_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}
