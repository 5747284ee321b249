#include "dbnslab/storage.hpp"

#include "dbnslab/error.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iterator>
#include <vector>

namespace dbnslab {

namespace fs = std::filesystem;

namespace {

constexpr char kMagic[4] = {'D', 'B', 'N', '1'};

void put_u32(std::vector<char>& out, std::uint64_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

class ByteCursor {
public:
    explicit ByteCursor(const std::vector<char>& bytes) : bytes_(bytes) {}

    std::uint8_t u8() {
        need(1);
        return static_cast<std::uint8_t>(bytes_[pos_++]);
    }

    std::uint32_t u32() {
        need(4);
        std::uint32_t v = 0;
        for (int i = 0; i < 4; ++i) v |= std::uint32_t{static_cast<std::uint8_t>(bytes_[pos_++])} << (8 * i);
        return v;
    }

    std::size_t remaining() const noexcept { return bytes_.size() - pos_; }
    std::size_t pos() const noexcept { return pos_; }

private:
    void need(std::size_t k) const {
        if (remaining() < k) throw Error(ErrorCode::Corrupt, "file ends inside the header");
    }

    const std::vector<char>& bytes_;
    std::size_t pos_ = 0;
};

}  // namespace

std::uint64_t cache_file_size(const BaseSystem& system, unsigned n) {
    return 4 + 1 + 1 + 4 * system.q() + 1 + 4 * system.digits().size() + 1 + (std::uint64_t{1} << n);
}

std::string cache_file_name(const BaseSystem& system, unsigned n) {
    std::string name = "kstar_b";
    for (std::size_t i = 0; i < system.bases().size(); ++i) name += (i ? "-" : "") + std::to_string(system.bases()[i]);
    name += "_d";
    for (std::size_t i = 0; i < system.digits().size(); ++i) name += (i ? "-" : "") + std::to_string(system.digits()[i]);
    return name + "_n" + std::to_string(n) + ".dbn";
}

void save_table(const OptimalTable& table, const fs::path& path) {
    const BaseSystem& system = table.system();
    std::vector<char> header(std::begin(kMagic), std::end(kMagic));
    header.push_back(static_cast<char>(kCacheVersion));
    header.push_back(static_cast<char>(system.q()));
    for (auto b : system.bases()) put_u32(header, b);
    header.push_back(static_cast<char>(system.digits().size()));
    for (auto d : system.digits()) put_u32(header, d);
    header.push_back(static_cast<char>(table.n()));

    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error(ErrorCode::IoError, "cannot open " + tmp.string() + " for writing");
        const auto payload = table.kstar();
        out.write(header.data(), static_cast<std::streamsize>(header.size()));
        out.write(reinterpret_cast<const char*>(payload.data()), static_cast<std::streamsize>(payload.size()));
        if (!out.flush()) throw Error(ErrorCode::IoError, "write to " + tmp.string() + " failed");
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw Error(ErrorCode::IoError, "cannot move cache file into " + path.string());
    }
}

OptimalTable load_table(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
    std::vector<char> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (in.bad()) throw Error(ErrorCode::IoError, "read of " + path.string() + " failed");

    if (bytes.size() < 4 || !std::equal(std::begin(kMagic), std::end(kMagic), bytes.begin())) {
        throw Error(ErrorCode::BadMagic, path.string() + " is not a k* cache file");
    }
    if (bytes.size() < 5 || static_cast<std::uint8_t>(bytes[4]) != kCacheVersion) {
        throw Error(ErrorCode::BadVersion, "unsupported cache version");
    }

    ByteCursor cur(bytes);
    for (int i = 0; i < 5; ++i) cur.u8();
    std::vector<std::uint64_t> bases(cur.u8());
    for (auto& b : bases) b = cur.u32();
    std::vector<std::uint64_t> digits(cur.u8());
    for (auto& d : digits) d = cur.u32();
    const unsigned n = cur.u8();

    std::optional<BaseSystem> system;
    try {
        system = make_base_system(bases, digits);
    } catch (const Error& e) {
        throw Error(ErrorCode::Corrupt, std::string("invalid base system in header (") + e.what() + ")");
    }
    if (n == 0 || n > kHardSolverCap) throw Error(ErrorCode::Corrupt, "n out of range");
    if (cur.remaining() != (std::uint64_t{1} << n)) throw Error(ErrorCode::Corrupt, "payload length is not 2^n");

    std::vector<std::uint8_t> kstar(bytes.begin() + static_cast<std::ptrdiff_t>(cur.pos()), bytes.end());
    return OptimalTable(std::move(*system), n, std::move(kstar));
}

std::optional<fs::path> resolve_cache_dir(const std::optional<std::string>& explicit_dir) {
    if (explicit_dir && !explicit_dir->empty()) return fs::path(*explicit_dir);
    if (const char* env = std::getenv(kCacheDirEnv); env && *env) return fs::path(env);
    return std::nullopt;
}

OptimalTable load_or_solve(const BaseSystem& system, unsigned n, unsigned cap, const std::optional<fs::path>& cache_dir) {
    require_solvable(system);
    if (n == 0 || n > std::min(cap, kHardSolverCap)) {
        throw Error(ErrorCode::CapExceeded, "n=" + std::to_string(n) + " exceeds the cap of " + std::to_string(cap));
    }
    if (!cache_dir) return solve_batch(system, n, cap);

    const fs::path path = *cache_dir / cache_file_name(system, n);
    if (fs::exists(path)) {
        try {
            OptimalTable table = load_table(path);
            if (table.system() == system && table.n() == n) return table;
        } catch (const Error&) {
            // fall through and rebuild
        }
    }
    OptimalTable table = solve_batch(system, n, cap);
    std::error_code ec;
    fs::create_directories(*cache_dir, ec);
    if (ec) throw Error(ErrorCode::IoError, "cannot create cache directory " + cache_dir->string());
    save_table(table, path);
    return table;
}

}  // namespace dbnslab
