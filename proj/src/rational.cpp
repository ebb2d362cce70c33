#include "qmassey/rational.hpp"

#include <stdexcept>

namespace qm {

std::string to_string(const Q& q) {
    Q r = q;
    r.canonicalize();
    if (r.get_den() == 1) return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

Q parse_rational(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty rational");
    Q q;
    std::string t = s;
    if (t[0] == '+') t = t.substr(1);
    if (q.set_str(t, 10) != 0) throw std::invalid_argument("bad rational: " + s);
    if (q.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
    q.canonicalize();
    return q;
}

} // namespace qm
