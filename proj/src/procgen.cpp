#include "procgen.hpp"

#include <atomic>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <nlohmann/json.hpp>

#include "parallel.hpp"
#include "rng.hpp"
#include "summation.hpp"

namespace mdclt {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr char kMagic[8] = {'M', 'D', 'C', 'L', 'T', 'B', '0', '1'};
constexpr std::uint64_t kDefaultMemoryCap = 2ULL << 30;  // 2 GiB

std::atomic<std::uint64_t> g_memory_cap{0};

double draw_innovation(RngStream& rng, const Innovation& law) {
    switch (law.law) {
        case InnovationLaw::gaussian: return rng.next_gaussian();
        case InnovationLaw::rademacher: return rng.next_rademacher();
        case InnovationLaw::centered_exponential: return rng.next_centered_exponential();
    }
    throw ConfigError("unknown innovation law");
}

// One replicate: innovations eps_{1-m}..eps_n, then X columns via one GEMM
// per coefficient matrix. x is time-major n*p, i.e. a column-major p x n map.
void generate_replicate(const ProcessSpec& spec, std::int64_t n, std::uint64_t master_seed,
                        std::int64_t r, double* x, std::vector<double>& eps_buf) {
    const int p = spec.p;
    const int m = spec.m;
    RngStream rng(master_seed, static_cast<std::uint64_t>(r));
    eps_buf.resize(static_cast<std::size_t>(n + m) * p);
    for (double& e : eps_buf) e = draw_innovation(rng, spec.innovation);

    Eigen::Map<const Eigen::MatrixXd> eps(eps_buf.data(), p, n + m);
    Eigen::Map<Eigen::MatrixXd> path(x, p, n);
    path.noalias() = spec.coeffs[0] * eps.middleCols(m, n);
    for (int a = 1; a <= m; ++a)
        path.noalias() += spec.coeffs[a] * eps.middleCols(m - a, n);
}

}  // namespace

ProcessSpec make_ma_process(int p, int m, std::vector<Eigen::MatrixXd> coeffs,
                            Innovation innovation) {
    if (p < 1) throw ConfigError("make_ma_process: p must be >= 1");
    if (m < 0) throw ConfigError("make_ma_process: m must be >= 0");
    if (coeffs.size() != static_cast<std::size_t>(m + 1))
        throw ConfigError("make_ma_process: expected " + std::to_string(m + 1) +
                          " coefficient matrices, got " + std::to_string(coeffs.size()));
    bool any_nonzero = false;
    for (const auto& a : coeffs) {
        if (a.rows() != p || a.cols() != p)
            throw ConfigError("make_ma_process: coefficient matrices must be p x p");
        if (!a.allFinite()) throw ConfigError("make_ma_process: non-finite coefficient");
        if (a.cwiseAbs().maxCoeff() > 0.0) any_nonzero = true;
    }
    if (!any_nonzero)
        throw ConfigError("make_ma_process: degenerate process, all coefficients zero");
    if (innovation.law == InnovationLaw::centered_exponential && !(innovation.rate > 0.0))
        throw ConfigError("make_ma_process: centered-exponential rate must be > 0");

    ProcessSpec spec;
    spec.p = p;
    spec.m = m;
    spec.coeffs = std::move(coeffs);
    spec.innovation = innovation;
    spec.lag_covs.reserve(m + 1);
    for (int l = 0; l <= m; ++l) {
        Eigen::MatrixXd g = Eigen::MatrixXd::Zero(p, p);
        for (int a = 0; a + l <= m; ++a)
            g.noalias() += spec.coeffs[a] * spec.coeffs[a + l].transpose();
        spec.lag_covs.push_back(std::move(g));
    }
    return spec;
}

Eigen::MatrixXd sum_covariance_len(const ProcessSpec& spec, std::int64_t len) {
    if (len < 1) throw ConfigError("sum_covariance: interval length must be >= 1");
    Eigen::MatrixXd v = static_cast<double>(len) * spec.lag_covs[0];
    const std::int64_t lmax = std::min<std::int64_t>(spec.m, len - 1);
    for (std::int64_t l = 1; l <= lmax; ++l)
        v.noalias() += static_cast<double>(len - l) *
                       (spec.lag_covs[l] + spec.lag_covs[l].transpose());
    return v;
}

Eigen::MatrixXd sum_covariance(const ProcessSpec& spec, std::int64_t i, std::int64_t j) {
    if (i < 1 || j < i) throw ConfigError("sum_covariance: need 1 <= i <= j");
    return sum_covariance_len(spec, j - i + 1);
}

void set_memory_cap(std::uint64_t bytes) {
    g_memory_cap.store(bytes, std::memory_order_relaxed);
}

std::uint64_t memory_cap() {
    const std::uint64_t cap = g_memory_cap.load(std::memory_order_relaxed);
    return cap == 0 ? kDefaultMemoryCap : cap;
}

std::shared_ptr<SampleBatch> sample_paths(const ProcessSpec& spec, std::int64_t n,
                                          std::int64_t R, std::uint64_t master_seed) {
    if (n < 1 || R < 1) throw ConfigError("sample_paths: need n >= 1 and R >= 1");
    const std::uint64_t bytes = SampleBatch::required_bytes(R, n, spec.p);
    if (bytes > memory_cap())
        throw NumericError("sample_paths: batch of " + std::to_string(bytes) +
                           " bytes exceeds the memory cap of " + std::to_string(memory_cap()) +
                           "; use sample_sums (streaming) or raise the cap");
    auto spec_copy = std::make_shared<const ProcessSpec>(spec);
    auto batch = std::make_shared<SampleBatch>(R, n, spec.p, master_seed, spec_copy);
    parallel_chunks(R, [&](std::int64_t begin, std::int64_t end) {
        std::vector<double> eps_buf;
        for (std::int64_t r = begin; r < end; ++r) {
            generate_replicate(spec, n, master_seed, r, batch->mutable_path(r), eps_buf);
            batch->finalize_replicate(r);
        }
    });
    return batch;
}

void sample_sums(const ProcessSpec& spec, std::int64_t n, std::int64_t R,
                 std::uint64_t master_seed, double* out) {
    if (n < 1 || R < 1) throw ConfigError("sample_sums: need n >= 1 and R >= 1");
    const int p = spec.p;
    parallel_chunks(R, [&](std::int64_t begin, std::int64_t end) {
        std::vector<double> eps_buf;
        std::vector<double> path(static_cast<std::size_t>(n) * p);
        std::vector<double> prefix(static_cast<std::size_t>(n + 1) * p);
        for (std::int64_t r = begin; r < end; ++r) {
            generate_replicate(spec, n, master_seed, r, path.data(), eps_buf);
            build_prefix(path.data(), n, p, prefix.data());
            std::memcpy(out + r * p, prefix.data() + n * p, p * sizeof(double));
        }
    });
}

// --------------------------------------------------------------------------
// Spec JSON + container I/O
// --------------------------------------------------------------------------

namespace {

const char* law_name(InnovationLaw law) {
    switch (law) {
        case InnovationLaw::gaussian: return "gaussian";
        case InnovationLaw::rademacher: return "rademacher";
        case InnovationLaw::centered_exponential: return "centered-exponential";
    }
    return "unknown";
}

InnovationLaw law_from_name(const std::string& name) {
    if (name == "gaussian") return InnovationLaw::gaussian;
    if (name == "rademacher") return InnovationLaw::rademacher;
    if (name == "centered-exponential") return InnovationLaw::centered_exponential;
    throw ConfigError("unknown innovation law '" + name + "'");
}

std::uint64_t fnv1a(const std::string& text) {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001B3ULL;
    }
    return h;
}

struct ContainerHeader {
    char magic[8];
    std::uint32_t version;
    std::uint32_t p;
    std::uint32_t m;
    std::uint32_t block_m;
    std::uint64_t n;
    std::uint64_t R;
    std::uint64_t master_seed;
    std::uint64_t spec_digest;
};
static_assert(sizeof(ContainerHeader) == 56);

}  // namespace

std::string spec_to_json(const ProcessSpec& spec) {
    ordered_json j;
    j["p"] = spec.p;
    j["m"] = spec.m;
    j["innovation"] = {{"law", law_name(spec.innovation.law)}, {"rate", spec.innovation.rate}};
    ordered_json coeffs = ordered_json::array();
    for (const auto& a : spec.coeffs) {
        ordered_json rows = ordered_json::array();
        for (int i = 0; i < spec.p; ++i) {
            ordered_json row = ordered_json::array();
            for (int k = 0; k < spec.p; ++k) row.push_back(a(i, k));
            rows.push_back(std::move(row));
        }
        coeffs.push_back(std::move(rows));
    }
    j["coeffs"] = std::move(coeffs);
    return j.dump();
}

ProcessSpec spec_from_json(const std::string& text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const std::exception& e) {
        throw ConfigError(std::string("spec JSON parse error: ") + e.what());
    }
    const int p = j.at("p").get<int>();
    const int m = j.at("m").get<int>();
    Innovation innovation;
    innovation.law = law_from_name(j.at("innovation").at("law").get<std::string>());
    innovation.rate = j.at("innovation").value("rate", 1.0);
    std::vector<Eigen::MatrixXd> coeffs;
    for (const auto& mat : j.at("coeffs")) {
        Eigen::MatrixXd a(p, p);
        if (static_cast<int>(mat.size()) != p) throw ConfigError("spec JSON: bad coeff shape");
        for (int i = 0; i < p; ++i) {
            if (static_cast<int>(mat[i].size()) != p)
                throw ConfigError("spec JSON: bad coeff shape");
            for (int k = 0; k < p; ++k) a(i, k) = mat[i][k].get<double>();
        }
        coeffs.push_back(std::move(a));
    }
    return make_ma_process(p, m, std::move(coeffs), innovation);
}

std::uint64_t spec_digest(const ProcessSpec& spec) {
    return fnv1a(spec_to_json(spec));
}

void save_batch(const SampleBatch& batch, const std::string& path) {
    if (!batch.spec()) throw ConfigError("save_batch: batch has no spec attached");
    ContainerHeader hdr{};
    std::memcpy(hdr.magic, kMagic, sizeof(kMagic));
    hdr.version = 1;
    hdr.p = static_cast<std::uint32_t>(batch.dim());
    hdr.m = static_cast<std::uint32_t>(batch.spec()->m);
    hdr.block_m = static_cast<std::uint32_t>(batch.block_m());
    hdr.n = static_cast<std::uint64_t>(batch.length());
    hdr.R = static_cast<std::uint64_t>(batch.replicates());
    hdr.master_seed = batch.master_seed();
    hdr.spec_digest = spec_digest(*batch.spec());

    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("save_batch: cannot open '" + path + "' for writing");
    out.write(reinterpret_cast<const char*>(&hdr), sizeof(hdr));
    out.write(reinterpret_cast<const char*>(batch.data()),
              static_cast<std::streamsize>(sizeof(double) * batch.replicates() * batch.length() *
                                           batch.dim()));
    if (!out) throw ConfigError("save_batch: write failed for '" + path + "'");
    out.close();

    std::ofstream side(path + ".json", std::ios::trunc);
    if (!side) throw ConfigError("save_batch: cannot open sidecar for '" + path + "'");
    side << spec_to_json(*batch.spec()) << '\n';
}

std::shared_ptr<SampleBatch> load_batch(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("load_batch: cannot open '" + path + "'");
    ContainerHeader hdr{};
    in.read(reinterpret_cast<char*>(&hdr), sizeof(hdr));
    if (!in || std::memcmp(hdr.magic, kMagic, sizeof(kMagic)) != 0)
        throw ConfigError("load_batch: '" + path + "' is not a batch container");
    if (hdr.version != 1)
        throw ConfigError("load_batch: unsupported container version " +
                          std::to_string(hdr.version));

    std::ifstream side(path + ".json");
    if (!side) throw ConfigError("load_batch: missing sidecar '" + path + ".json'");
    std::string text((std::istreambuf_iterator<char>(side)), std::istreambuf_iterator<char>());
    ProcessSpec spec = spec_from_json(text);
    if (spec_digest(spec) != hdr.spec_digest)
        throw ConfigError("load_batch: sidecar spec digest does not match container header");
    if (static_cast<std::uint32_t>(spec.m) != hdr.m)
        throw ConfigError("load_batch: sidecar/header m mismatch");

    const auto R = static_cast<std::int64_t>(hdr.R);
    const auto n = static_cast<std::int64_t>(hdr.n);
    const int p = static_cast<int>(hdr.p);
    if (SampleBatch::required_bytes(R, n, p) > memory_cap())
        throw NumericError("load_batch: batch exceeds the memory cap");
    auto batch = std::make_shared<SampleBatch>(R, n, p, hdr.master_seed,
                                               std::make_shared<const ProcessSpec>(std::move(spec)),
                                               static_cast<int>(hdr.block_m));
    in.read(reinterpret_cast<char*>(batch->mutable_path(0)),
            static_cast<std::streamsize>(sizeof(double) * R * n * p));
    if (!in) throw ConfigError("load_batch: container '" + path + "' is truncated");
    parallel_for(R, [&](std::int64_t r) { batch->finalize_replicate(r); });
    return batch;
}

}  // namespace mdclt
