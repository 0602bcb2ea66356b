#pragma once

#include "fidelity/config.hpp"
#include "fidelity/dependency.hpp"
#include "fidelity/distribution.hpp"
#include "fidelity/embedding.hpp"
#include "fidelity/errors.hpp"
#include "fidelity/graph.hpp"
#include "fidelity/pipeline.hpp"
#include "fidelity/quality.hpp"
#include "fidelity/report.hpp"
#include "fidelity/report_schema.hpp"
#include "fidelity/run_id.hpp"
#include "fidelity/sampling.hpp"
#include "fidelity/schema.hpp"
#include "fidelity/sidecars.hpp"
#include "fidelity/table.hpp"
