#pragma once

namespace bellforge {

// Guard for exhaustive vertex enumeration. The default keeps full sweeps at
// or below 2^25 reduced vertices. BELLFORGE_CAP overrides it process-wide.
struct EnumerationCaps {
    int max_total_settings = 26;

    static EnumerationCaps from_env();
};

} // namespace bellforge
