import { loadTables } from './actions';
import { renderWizard } from './wizard';

const root = document.getElementById('app');
if (root) {
  renderWizard(root);
  void loadTables();
}
