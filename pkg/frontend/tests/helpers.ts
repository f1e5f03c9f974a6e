import { readFileSync } from 'node:fs'
import { fileURLToPath } from 'node:url'
import { RubricDefinition, validateRubric } from '../src/rubric.js'

export function shippedRubric(): RubricDefinition {
  const path = fileURLToPath(new URL('../rubric.json', import.meta.url))
  return validateRubric(JSON.parse(readFileSync(path, 'utf-8')))
}

export const THREE_DIALOGUES = ['d1', 'd2', 'd3'] as const
