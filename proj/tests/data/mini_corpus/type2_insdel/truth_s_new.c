static void enable_irq_logging(struct irq_desc *desc)
{
	raw_spin_lock(&desc->lock);
	desc->istate |= IRQS_LOG_ENABLED;
	raw_spin_unlock(&desc->lock);
}
