#include "chebdim/tensor_io.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace chebdim {

namespace {

constexpr const char* kMagic = "chebdim-tensor";
constexpr int kVersion = 1;

std::string full(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

[[noreturn]] void fail(const std::string& what) {
    throw std::runtime_error("load_tensor: " + what);
}

void expect_token(std::istream& in, const char* token) {
    std::string got;
    if (!(in >> got) || got != token) fail("expected '" + std::string(token) + "', got '" + got + "'");
}

}  // namespace

void save_tensor(const ChebyshevTensor& tensor, std::ostream& out) {
    const ChebyshevGrid& grid = tensor.grid();
    out << kMagic << ' ' << kVersion << '\n';
    out << "dims " << grid.dim_count() << '\n';
    for (int d = 0; d < grid.dim_count(); ++d)
        out << "interval " << full(grid.domain()[d].lo) << ' ' << full(grid.domain()[d].hi)
            << " count " << grid.counts()[static_cast<std::size_t>(d)] << '\n';
    out << "values " << tensor.values().size() << '\n';
    for (Eigen::Index i = 0; i < tensor.values().size(); ++i) out << full(tensor.values()[i]) << '\n';
    if (!out) throw std::runtime_error("save_tensor: write failed");
}

void save_tensor(const ChebyshevTensor& tensor, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("save_tensor: cannot open '" + path + "'");
    save_tensor(tensor, out);
}

ChebyshevTensor load_tensor(std::istream& in) {
    std::string magic;
    int version = 0;
    if (!(in >> magic >> version)) fail("missing header");
    if (magic != kMagic) fail("not a tensor file (bad magic '" + magic + "')");
    if (version != kVersion) fail("unsupported version " + std::to_string(version));

    expect_token(in, "dims");
    int dims = 0;
    if (!(in >> dims) || dims < 1) fail("bad dimension count");

    std::vector<Interval> intervals;
    std::vector<int> counts;
    intervals.reserve(static_cast<std::size_t>(dims));
    for (int d = 0; d < dims; ++d) {
        expect_token(in, "interval");
        double lo = 0, hi = 0;
        if (!(in >> lo >> hi)) fail("bad interval in dimension " + std::to_string(d));
        expect_token(in, "count");
        int m = 0;
        if (!(in >> m) || m < 2) fail("bad count in dimension " + std::to_string(d));
        intervals.emplace_back(lo, hi);
        counts.push_back(m);
    }

    expect_token(in, "values");
    long long total = 0;
    if (!(in >> total) || total < 1) fail("bad value count");
    Eigen::VectorXd values(static_cast<Eigen::Index>(total));
    for (long long i = 0; i < total; ++i)
        if (!(in >> values[static_cast<Eigen::Index>(i)]))
            fail("missing value " + std::to_string(i) + " of " + std::to_string(total));

    return ChebyshevTensor(ChebyshevGrid(HyperRectangle(std::move(intervals)), std::move(counts)),
                           std::move(values));
}

ChebyshevTensor load_tensor(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_tensor: cannot open '" + path + "'");
    return load_tensor(in);
}

}  // namespace chebdim
