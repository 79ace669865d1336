#pragma once

#include "docforest/category.hpp"
#include "docforest/document.hpp"
#include "docforest/encoder.hpp"
#include "docforest/error.hpp"
#include "docforest/eval.hpp"
#include "docforest/features.hpp"
#include "docforest/jsonl.hpp"
#include "docforest/loss.hpp"
#include "docforest/matcher.hpp"
#include "docforest/matrix.hpp"
#include "docforest/model.hpp"
#include "docforest/pipeline.hpp"
#include "docforest/random.hpp"
#include "docforest/rules.hpp"
#include "docforest/synth.hpp"
#include "docforest/train.hpp"
