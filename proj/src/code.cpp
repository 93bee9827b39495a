#include "grandlab/code.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <stdexcept>

#include "grandlab/gf2m.hpp"

namespace grandlab {

void validate_code(const LinearCode& code) {
    if (code.G.rows() != code.k || code.G.cols() != code.n)
        throw std::runtime_error("code '" + code.name + "': G is not k x n");
    if (code.H.rows() != code.n - code.k || code.H.cols() != code.n)
        throw std::runtime_error("code '" + code.name + "': H is not (n-k) x n");
    if (!code.G.multiply(code.H.transposed()).is_zero())
        throw std::runtime_error("code '" + code.name + "': G H^T != 0");
    if (code.G.rank() != code.k) throw std::runtime_error("code '" + code.name + "': G is rank deficient");
    if (code.H.rank() != code.n - code.k) throw std::runtime_error("code '" + code.name + "': H is rank deficient");
}

LinearCode ebch(int m, int t, uint32_t poly) {
    if (m < 3) throw std::invalid_argument("ebch: m must be >= 3");
    if (t < 1 || static_cast<long long>(t) * 2 * m >= (1 << (m - 1)) * 2)
        throw std::invalid_argument("ebch: designed t out of range");
    Gf2mField field(m, poly);
    int n = (1 << m) - 1;

    // distinct cyclotomic cosets of the designed odd exponents 1, 3, ..., 2t-1
    std::vector<std::vector<int>> cosets;
    std::set<int> seen;
    for (int e = 1; e <= 2 * t - 1; e += 2) {
        auto c = cyclotomic_coset(e, m);
        if (seen.count(c.front())) continue;
        for (int x : c) seen.insert(x);
        cosets.push_back(std::move(c));
    }

    std::vector<uint8_t> g{1};
    for (const auto& c : cosets) g = gf2poly_mul(g, minimal_polynomial(field, c.front()));
    int deg = static_cast<int>(g.size()) - 1;
    int k = n - deg;
    if (k <= 0) throw std::invalid_argument("ebch: degenerate dimension k <= 0");

    LinearCode code;
    code.n = n + 1;
    code.k = k;
    code.name = "ebch" + std::to_string(n + 1) + "_" + std::to_string(k);

    // G: shifted copies of g(x) plus an overall parity bit at position n+1
    code.G = BitMatrix(k, n + 1);
    for (int i = 0; i < k; ++i) {
        int w = 0;
        for (int j = 0; j <= deg; ++j)
            if (g[j]) {
                code.G.set(i + 1, i + j + 1, true);
                ++w;
            }
        if (w & 1) code.G.set(i + 1, n + 1, true);
    }

    // H: all-ones extension row, then per coset the bit-rows of j -> alpha^(e j),
    // keeping only rows that grow the rank (cosets shorter than m contribute
    // fewer independent rows).
    BitMatrix H(0, n + 1);
    H.append_row(BitVec::ones(n + 1));
    BitMatrix basis = H;
    for (const auto& c : cosets) {
        int e = c.front();
        int kept = 0;
        for (int bit = 0; bit < m && kept < static_cast<int>(c.size()); ++bit) {
            BitVec row(n + 1);
            for (int j = 0; j < n; ++j)
                if ((field.exp(static_cast<int>((static_cast<long long>(e) * j) % field.order())) >> bit) & 1)
                    row.set(j + 1, true);
            BitMatrix trial = basis;
            trial.append_row(row);
            if (trial.rank() == basis.rows() + 1) {
                basis = trial;
                H.append_row(std::move(row));
                ++kept;
            }
        }
        if (kept != static_cast<int>(c.size()))
            throw std::logic_error("ebch: coset rows rank-deficient");
    }
    code.H = std::move(H);

    validate_code(code);
    return code;
}

LinearCode extended_hamming(int m) {
    if (m < 2) throw std::invalid_argument("extended_hamming: m must be >= 2");
    int n = 1 << m;
    LinearCode code;
    code.n = n;
    code.k = n - m - 1;
    code.name = "ehamming" + std::to_string(n) + "_" + std::to_string(code.k);
    code.H = BitMatrix(m + 1, n);
    for (int j = 1; j <= n; ++j) {
        code.H.set(1, j, true);
        for (int bit = 0; bit < m; ++bit)
            if (((j - 1) >> bit) & 1) code.H.set(bit + 2, j, true);
    }
    code.G = code.H.nullspace();
    validate_code(code);
    return code;
}

namespace {

// Chung's Gaussian-approximation phi and the check-node mean update.
double ga_phi(double x) {
    if (x < 1e-12) return 1.0;
    if (x <= 10.0) return std::exp(-0.4527 * std::pow(x, 0.859) + 0.0218);
    return std::sqrt(3.14159265358979323846 / x) * std::exp(-x / 4.0) * (1.0 - 10.0 / (7.0 * x));
}

double ga_phi_inv(double y) {
    // phi is strictly decreasing; bisection is plenty for construction time
    double lo = 1e-12, hi = 1e7;
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        if (ga_phi(mid) > y)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

double ga_check(double mean) { return ga_phi_inv(1.0 - (1.0 - ga_phi(mean)) * (1.0 - ga_phi(mean))); }

}  // namespace

std::vector<int> rm_polar_info_set(int n, int k, double design_ebno_db) {
    if (n < 2 || (n & (n - 1)) != 0) throw std::invalid_argument("pac: n must be a power of two");
    if (k < 1 || k > n) throw std::invalid_argument("pac: k outside [1, n]");
    int m = std::countr_zero(static_cast<unsigned>(n));
    double rate = static_cast<double>(k) / n;
    double sigma_sq = 1.0 / (2.0 * rate * std::pow(10.0, design_ebno_db / 10.0));
    double m0 = 2.0 / sigma_sq;

    std::vector<double> rel(n);
    for (int i = 0; i < n; ++i) {
        double mean = m0;
        for (int b = m - 1; b >= 0; --b) mean = ((i >> b) & 1) ? 2.0 * mean : ga_check(mean);
        rel[i] = mean;
    }

    std::vector<int> idx(n);
    for (int i = 0; i < n; ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](int a, int b) {
        int wa = std::popcount(static_cast<unsigned>(a)), wb = std::popcount(static_cast<unsigned>(b));
        if (wa != wb) return wa > wb;
        if (rel[a] != rel[b]) return rel[a] > rel[b];
        return a > b;
    });
    std::vector<int> info(idx.begin(), idx.begin() + k);
    std::sort(info.begin(), info.end());
    return info;
}

LinearCode pac(int n, int k, const std::vector<uint8_t>& conv_poly, RateProfile profile) {
    if (profile != RateProfile::RmPolarGa2dB) throw std::invalid_argument("pac: unknown rate profile");
    return pac(n, k, conv_poly, rm_polar_info_set(n, k, 2.0));
}

LinearCode pac(int n, int k, const std::vector<uint8_t>& conv_poly, const std::vector<int>& info_set) {
    if (n < 2 || (n & (n - 1)) != 0) throw std::invalid_argument("pac: n must be a power of two");
    if (static_cast<int>(info_set.size()) != k) throw std::invalid_argument("pac: rate profile size != k");
    if (conv_poly.empty() || conv_poly.front() != 1)
        throw std::invalid_argument("pac: convolution polynomial must start with 1");
    for (int i : info_set)
        if (i < 0 || i >= n) throw std::invalid_argument("pac: information index out of range");

    // F^{(x)m} rows: row i has ones at all bitwise subsets of i. Row i of T F
    // is the XOR over taps d (c_d = 1, i + d < n) of row (i + d) of F.
    auto tf_row = [&](int i) {
        BitVec row(n);
        for (size_t d = 0; d < conv_poly.size(); ++d) {
            if (!conv_poly[d] || i + static_cast<int>(d) >= n) continue;
            int u = i + static_cast<int>(d);
            // ones at columns j with j subset of u
            for (int j = u;; j = (j - 1) & u) {
                row.flip(j + 1);
                if (j == 0) break;
            }
        }
        return row;
    };

    LinearCode code;
    code.n = n;
    code.k = k;
    code.name = "pac" + std::to_string(n) + "_" + std::to_string(k);
    code.G = BitMatrix(0, n);
    std::vector<int> info = info_set;
    std::sort(info.begin(), info.end());
    for (int i : info) code.G.append_row(tf_row(i));

    // H rows come from the frozen coordinates of v = c F T^{-1}:
    // h_j = XOR over x <= j with d_{j-x} = 1 of the superset-cone of x,
    // where d is the power series inverse of the convolution polynomial.
    std::vector<uint8_t> d(n, 0);
    d[0] = 1;
    for (int i = 1; i < n; ++i) {
        uint8_t acc = 0;
        for (size_t t = 1; t < conv_poly.size() && static_cast<int>(t) <= i; ++t)
            if (conv_poly[t]) acc ^= d[i - t];
        d[i] = acc;
    }
    auto cone = [&](int x) {
        BitVec v(n);
        for (int c = 0; c < n; ++c)
            if ((c & x) == x) v.set(c + 1, true);
        return v;
    };
    std::vector<bool> is_info(n, false);
    for (int i : info) is_info[i] = true;
    code.H = BitMatrix(0, n);
    for (int j = 0; j < n; ++j) {
        if (is_info[j]) continue;
        BitVec row(n);
        for (int x = 0; x <= j; ++x)
            if (d[j - x]) row ^= cone(x);
        code.H.append_row(std::move(row));
    }

    validate_code(code);
    return code;
}

BitVec encode(const LinearCode& code, const BitVec& msg) {
    if (msg.length() != code.k)
        throw std::invalid_argument("encode: message length " + std::to_string(msg.length()) + " != k " +
                                    std::to_string(code.k));
    BitVec c(code.n);
    for (int i = 1; i <= code.k; ++i)
        if (msg.get(i)) c ^= code.G.row(i);
    return c;
}

LinearCode load_code(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("load_code: cannot open " + path);
    std::string header;
    if (!std::getline(is, header) || header.rfind("# kind=", 0) != 0)
        throw std::runtime_error("load_code: missing '# kind=' header line");
    char kind = header[7];
    if (kind != 'G' && kind != 'H') throw std::runtime_error("load_code: kind must be G or H");
    std::string name = "file";
    if (auto pos = header.find("name="); pos != std::string::npos) name = header.substr(pos + 5);

    BitMatrix m = read_matrix(is);
    LinearCode code;
    code.name = name;
    code.n = m.cols();
    if (kind == 'G') {
        code.k = m.rows();
        code.G = std::move(m);
        code.H = code.G.nullspace();
    } else {
        code.k = m.cols() - m.rows();
        code.H = std::move(m);
        code.G = code.H.nullspace();
    }
    validate_code(code);
    return code;
}

void save_code(const LinearCode& code, const std::string& path, char kind) {
    if (kind != 'G' && kind != 'H') throw std::invalid_argument("save_code: kind must be G or H");
    std::ofstream os(path);
    if (!os) throw std::runtime_error("save_code: cannot open " + path);
    os << "# kind=" << kind << " name=" << code.name << '\n';
    write_matrix(os, kind == 'G' ? code.G : code.H);
    if (!os) throw std::runtime_error("save_code: write failed for " + path);
}

namespace {

std::map<std::string, LinearCode>& registry_cache() {
    static std::map<std::string, LinearCode> cache;
    return cache;
}
std::mutex registry_mutex;

LinearCode build_registry_code(const std::string& name) {
    if (name == "ebch128_106") return ebch(7, 3, 0b10001001);  // x^7 + x^3 + 1
    if (name == "ebch64_45") return ebch(6, 3, 0b1000011);     // x^6 + x + 1
    if (name == "ebch32_21") return ebch(5, 2, 0b100101);      // x^5 + x^2 + 1
    if (name == "ehamming8_4") return extended_hamming(3);
    if (name == "pac64_44") return pac(64, 44, {1, 0, 1, 1, 0, 1, 1}, RateProfile::RmPolarGa2dB);
    throw std::invalid_argument("unknown code name '" + name + "'");
}

}  // namespace

std::vector<std::string> registry_names() {
    return {"ebch128_106", "ebch64_45", "ebch32_21", "ehamming8_4", "pac64_44"};
}

const LinearCode& code_by_name(const std::string& name) {
    std::lock_guard<std::mutex> lock(registry_mutex);
    auto& cache = registry_cache();
    auto it = cache.find(name);
    if (it == cache.end()) it = cache.emplace(name, build_registry_code(name)).first;
    return it->second;
}

}  // namespace grandlab
