// benchmarks live under benches/
