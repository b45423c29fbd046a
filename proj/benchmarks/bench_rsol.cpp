#include <benchmark/benchmark.h>

#include <string>

#include "rsol/boolean.hpp"
#include "rsol/calculus.hpp"
#include "rsol/definability.hpp"
#include "rsol/evaluation.hpp"
#include "rsol/proof_io.hpp"
#include "rsol/random.hpp"

namespace {

using namespace rsol;

const Signature& sig() {
  static const Signature s = parse_signature("P0/1 P1/2 c1");
  return s;
}

void BM_EvalSo(benchmark::State& state) {
  Rng rng(7);
  const auto n = static_cast<std::uint32_t>(state.range(0));
  // Same sentence for every size.
  RandomFormulaOptions opt;
  opt.depth = 5;
  Formula f = random_sentence(rng, sig(), opt);
  FiniteStructure s = random_structure(rng, sig(), n);
  StandardModel m = make_model(s, exact_provider(s, *make_dsl(sig())));
  for (auto _ : state) benchmark::DoNotOptimize(eval_so(m, f));
}
BENCHMARK(BM_EvalSo)->Arg(3)->Arg(5)->Arg(7);

void BM_MaterializeDsl(benchmark::State& state) {
  Rng rng(11);
  FiniteStructure s = random_structure(rng, sig(), 4);
  auto fam = make_dsl(sig());
  const auto bound = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(materialize_k(s, *fam, bound, 1).size(1));
}
BENCHMARK(BM_MaterializeDsl)->Arg(8)->Arg(32)->Arg(128);

void BM_Automorphisms(benchmark::State& state) {
  Rng rng(3);
  FiniteStructure s = random_structure(rng, sig(), static_cast<std::uint32_t>(state.range(0)), 0.2);
  for (auto _ : state) benchmark::DoNotOptimize(automorphisms(s).size());
}
BENCHMARK(BM_Automorphisms)->Arg(4)->Arg(6)->Arg(8);

void BM_CheckProof(benchmark::State& state) {
  ProofReadOptions opt;
  opt.base_dir = RSOL_CORPUS_DIR "/proofs";
  Proof p = load_proof(RSOL_CORPUS_DIR "/proofs/self_impl.prf", opt);
  for (auto _ : state) benchmark::DoNotOptimize(check_proof(p).accepted);
}
BENCHMARK(BM_CheckProof);

void BM_RsComplete(benchmark::State& state) {
  PowersetAlgebra alg(static_cast<std::uint32_t>(state.range(0)));
  auto entries = complete_regular_family(alg);
  auto avoid = alg.atom(0);
  for (auto _ : state) benchmark::DoNotOptimize(rs_construct(alg, entries, avoid, RsOptions{}).chain.size());
}
BENCHMARK(BM_RsComplete)->Arg(2)->Arg(3);

}  // namespace

BENCHMARK_MAIN();
