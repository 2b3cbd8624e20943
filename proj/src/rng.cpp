#include "ddcma/rng.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>

#include "ddcma/errors.hpp"

namespace ddcma {

void NormalRng::save(std::ostream& os) const {
    os << "rng " << gen_ << '\n';
    char buf[40];
    std::snprintf(buf, sizeof buf, "%a", spare_);
    os << "rng_spare " << (has_spare_ ? 1 : 0) << ' ' << buf << '\n';
}

void NormalRng::load(std::istream& is) {
    std::string tag;
    is >> tag;
    if (tag != "rng") throw ProtocolError("rng state: bad tag '" + tag + "'");
    is >> gen_;
    is >> tag;
    if (tag != "rng_spare")
        throw ProtocolError("rng state: bad tag '" + tag + "'");
    int flag = 0;
    std::string hex;
    is >> flag >> hex;
    if (!is) throw ProtocolError("rng state: truncated");
    has_spare_ = flag != 0;
    spare_ = std::strtod(hex.c_str(), nullptr);
}

std::uint64_t mix_seed(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

} // namespace ddcma
