#pragma once

// Umbrella header pulling in the whole library.

#include "demandcast/core/aggregate.hpp"
#include "demandcast/core/calendar.hpp"
#include "demandcast/core/daily_series.hpp"
#include "demandcast/core/date.hpp"
#include "demandcast/errors.hpp"
#include "demandcast/io/calendar_config.hpp"
#include "demandcast/io/csv.hpp"
#include "demandcast/io/model_store.hpp"
#include "demandcast/io/report.hpp"
#include "demandcast/metrics.hpp"
#include "demandcast/models/ar.hpp"
#include "demandcast/models/design_matrix.hpp"
#include "demandcast/models/forecast.hpp"
#include "demandcast/models/ols.hpp"
#include "demandcast/models/regressor_spec.hpp"
#include "demandcast/segregation.hpp"
#include "demandcast/synth.hpp"
