use axum::body::Body;
use axum::http::{Request, StatusCode};
use http_body_util::BodyExt;
use puptent::embedding::Embedded;
use puptent::mesh::Slice;
use puptent::report::TorusReport;
use puptent::service::{router, DomainOutline};
use tower::ServiceExt;

async fn get(uri: &str) -> (StatusCode, String) {
    let res = router(None)
        .oneshot(Request::get(uri).body(Body::empty()).unwrap())
        .await
        .unwrap();
    let status = res.status();
    let bytes = res.into_body().collect().await.unwrap().to_bytes();
    (status, String::from_utf8(bytes.to_vec()).unwrap())
}

#[tokio::test]
async fn domain_outline() {
    let (status, body) = get("/api/domain").await;
    assert_eq!(status, StatusCode::OK);
    let d: DomainOutline = serde_json::from_str(&body).unwrap();
    assert_eq!(d.hex_vertex, [0.5, 3f64.sqrt() / 2.0]);
    for p in &d.arc {
        assert!((((p[0] - 1.0).powi(2) + p[1] * p[1]).sqrt() - 1.0).abs() < 1e-12);
    }
    assert!(d.arc.first().unwrap()[0].abs() < 1e-12);
    assert!((d.arc.last().unwrap()[0] - 0.5).abs() < 1e-12);
}

#[tokio::test]
async fn deformed_tent_is_embedded() {
    let (status, body) = get("/api/torus?x=0.25&y=1&t=0.125").await;
    assert_eq!(status, StatusCode::OK, "{body}");
    let r: TorusReport = serde_json::from_str(&body).unwrap();
    assert_eq!(r.embedding.embedded, Embedded::Yes);
}

#[tokio::test]
async fn golden_tent_is_degenerate() {
    let (status, body) = get("/api/torus?x=0.25&y=1&t=0").await;
    assert_eq!(status, StatusCode::OK);
    let r: TorusReport = serde_json::from_str(&body).unwrap();
    assert_eq!(r.embedding.embedded, Embedded::Degenerate);
    assert!(r.modulus.is_some());
}

#[tokio::test]
async fn solved_mode() {
    let (status, body) = get("/api/torus?x=0.25&y=1&t=0.01&mode=solved").await;
    assert_eq!(status, StatusCode::OK);
    let r: TorusReport = serde_json::from_str(&body).unwrap();
    assert!(r.theta.unwrap() < 1e-12 && r.matches_reference);
}

#[tokio::test]
async fn xz_slice_is_mirror_symmetric() {
    let (status, body) = get("/api/slice?x=0.25&y=1&t=0&plane=XZ&offset=0").await;
    assert_eq!(status, StatusCode::OK);
    let s: Slice = serde_json::from_str(&body).unwrap();
    assert!(!s.segments.is_empty());
    let key = |a: [f64; 2], b: [f64; 2]| {
        let mut e = [a, b];
        e.sort_by(|p, q| p[0].total_cmp(&q[0]).then(p[1].total_cmp(&q[1])));
        e
    };
    for g in &s.segments {
        let [a, b] = g.plane_points;
        let m = key([-a[0], a[1]], [-b[0], b[1]]);
        let found = s.segments.iter().any(|h| {
            let k = key(h.plane_points[0], h.plane_points[1]);
            (0..2).all(|i| (0..2).all(|j| (k[i][j] - m[i][j]).abs() < 1e-12))
        });
        assert!(found, "no mirror image of {g:?}");
    }
}

#[tokio::test]
async fn probe_table() {
    let (status, body) = get("/api/probe?x=0.25&y=1").await;
    assert_eq!(status, StatusCode::OK);
    let v: serde_json::Value = serde_json::from_str(&body).unwrap();
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 4);
    assert!(rows.iter().all(|r| r["embedded"] == true));
}

#[tokio::test]
async fn bad_parameters_are_400_with_region() {
    let (status, body) = get("/api/torus?x=0.9&y=1").await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    let v: serde_json::Value = serde_json::from_str(&body).unwrap();
    assert_eq!(v["region"], "outside");

    let (status, body) = get("/api/torus?x=0&y=1.2&t=0.1").await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    let v: serde_json::Value = serde_json::from_str(&body).unwrap();
    assert_eq!(v["region"], "left-edge");

    assert_eq!(get("/api/torus?x=0.25").await.0, StatusCode::BAD_REQUEST);
    assert_eq!(get("/api/slice?x=0.25&y=1&plane=QQ").await.0, StatusCode::BAD_REQUEST);
}

#[tokio::test]
async fn solver_failure_is_422_with_trace() {
    let (status, body) = get("/api/torus?x=0.25&y=1&t=5&mode=solved").await;
    assert_eq!(status, StatusCode::UNPROCESSABLE_ENTITY, "{body}");
    let v: serde_json::Value = serde_json::from_str(&body).unwrap();
    assert!(v["error"].is_string());
}

#[tokio::test]
async fn identical_queries_give_identical_bodies() {
    let a = get("/api/torus?x=0.3&y=1.2&t=0.05").await;
    let b = get("/api/torus?x=0.3&y=1.2&t=0.05").await;
    assert_eq!(a, b);
}

#[tokio::test]
async fn serves_over_tcp() {
    use tokio::io::{AsyncReadExt, AsyncWriteExt};
    let listener = tokio::net::TcpListener::bind("127.0.0.1:0").await.unwrap();
    let addr = listener.local_addr().unwrap();
    tokio::spawn(async move { axum::serve(listener, router(None)).await.unwrap() });
    let mut stream = tokio::net::TcpStream::connect(addr).await.unwrap();
    stream
        .write_all(b"GET /api/domain HTTP/1.1\r\nHost: localhost\r\nConnection: close\r\n\r\n")
        .await
        .unwrap();
    let mut response = String::new();
    stream.read_to_string(&mut response).await.unwrap();
    assert!(response.starts_with("HTTP/1.1 200"), "{response}");
    assert!(response.contains("application/json"));
    assert!(response.contains("\"hex_vertex\""));
}
