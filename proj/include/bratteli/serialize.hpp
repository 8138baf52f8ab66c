#ifndef BRATTELI_SERIALIZE_HPP
#define BRATTELI_SERIALIZE_HPP

#include "bratteli/iso.hpp"
#include "bratteli/k0.hpp"
#include "bratteli/uhf.hpp"

#include <json.hpp>

namespace bratteli {

using Json = nlohmann::ordered_json;

/// Integers that fit in 64 bits become JSON numbers, larger ones strings.
Json to_json(const BigInt& v);
Json to_json(const IntVector& v);
Json to_json(const IntMatrix& m);
/// Throws InvalidCertificate on malformed input.
BigInt bigint_from_json(const Json& j);
IntMatrix matrix_from_json(const Json& j);

/// Fields in fixed order: r, t, R, T, closure, closure_from.
Json to_json(const IntertwiningCertificate& c);
/// Throws InvalidCertificate.
IntertwiningCertificate certificate_from_json(const Json& j);

Json to_json(const EquivalenceResult& r);
Json to_json(const IsoResult& r);
Json to_json(const NonVanishing& n);
Json to_json(const K0Decision& d);
Json to_json(const SupernaturalNumber& s);

}  // namespace bratteli

#endif  // BRATTELI_SERIALIZE_HPP
